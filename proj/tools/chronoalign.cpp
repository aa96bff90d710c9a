// Batch frontend composing the library modules into the two pipelines:
// chunk-and-align data preparation and diarization post-processing, plus
// scoring, parameter sweeps, and the synthetic-data generator.
//
// Exit codes: 0 success, 1 validation/runtime error, 2 usage error.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "chronoalign/align.hpp"
#include "chronoalign/chunk.hpp"
#include "chronoalign/config.hpp"
#include "chronoalign/diarization.hpp"
#include "chronoalign/error.hpp"
#include "chronoalign/io.hpp"
#include "chronoalign/metrics.hpp"
#include "chronoalign/sim.hpp"
#include "chronoalign/text.hpp"
#include "chronoalign/time.hpp"
#include "chronoalign/vad.hpp"

namespace fs = std::filesystem;
using namespace chronoalign;

namespace {

constexpr const char* kToolName = "chronoalign 0.1.0";

// Bad flag combinations surface as exit code 2, like parser errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_usage(bool ok, const char* message) {
    if (!ok) {
        throw UsageError(message);
    }
}

// ---------------------------------------------------------------------------
// Shared option plumbing

struct CommonOpts {
    std::string config_path;
    std::map<std::string, std::string> overrides;  // key -> raw value, flags win
    int jobs = 1;
    bool lenient = false;

    PipelineConfig resolve() const {
        PipelineConfig cfg;
        std::string path = config_path;
        if (path.empty()) {
            if (const char* env = std::getenv("CHRONOALIGN_CONFIG")) {
                path = env;
            }
        }
        if (!path.empty()) {
            cfg = parse_config(read_file(path));
        }
        for (const auto& [key, value] : overrides) {
            cfg.set(key, value);
        }
        cfg.validate();
        return cfg;
    }
};

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "onset",          "offset",           "min_speech",        "min_silence",
        "max_window",     "window_overlap",   "chunk_max",         "chunk_min",
        "rep_max_n",      "rep_min_repeats",  "cluster_threshold", "min_duration_off",
        "merge_min_gap",  "merge_anchor_gap", "merge_max_gap",     "density_window",
        "transient",      "collar",           "split_seed",        "train_frac"};
    return keys;
}

void add_common_opts(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path,
                    "Config file (flat key = value); defaults to $CHRONOALIGN_CONFIG");
    cmd->add_option("--jobs", opts.jobs, "File-level worker count")->check(CLI::PositiveNumber);
    cmd->add_flag("--lenient", opts.lenient, "Log and skip malformed input rows");
    for (const auto& key : config_keys()) {
        // Tunables mirror the config keys 1:1; values use config-file syntax.
        cmd->add_option_function<std::string>(
               "--" + key, [&opts, key](const std::string& v) { opts.overrides[key] = v; })
            ->group("Pipeline tunables");
    }
}

std::string config_hash(const PipelineConfig& cfg) {
    return sha256_hex(cfg.canonical_str());
}

struct InputRef {
    std::string path;
    std::string digest;
};

void write_run_manifest(const fs::path& out_path, const std::string& command,
                        const std::string& cfg_hash, const std::vector<InputRef>& inputs) {
    std::string doc = "{\"schema_version\": 1, \"tool\": \"" + std::string(kToolName) + "\"";
    doc += ", \"command\": \"" + command + "\"";
    doc += ", \"config_sha256\": \"" + cfg_hash + "\"";
    doc += ", \"inputs\": [";
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (i > 0) {
            doc += ", ";
        }
        doc += "{\"path\": \"" + inputs[i].path + "\", \"sha256\": \"" + inputs[i].digest + "\"}";
    }
    doc += "], \"output\": \"" + out_path.filename().string() + "\"}\n";
    write_file_atomic(out_path.string() + ".run.json", doc);
}

// Reads a file and records it as a run-manifest input.
std::string read_input(const fs::path& path, std::vector<InputRef>& inputs) {
    std::string content = read_file(path);
    inputs.push_back({path.string(), sha256_hex(content)});
    return content;
}

void emit_output(const fs::path& path, std::string_view content, const std::string& command,
                 const std::string& cfg_hash, const std::vector<InputRef>& inputs) {
    write_file_atomic(path, content);
    write_run_manifest(path, command, cfg_hash, inputs);
}

// ---------------------------------------------------------------------------
// Batch execution

struct TaskResult {
    bool ok = true;
    std::string label;
    std::string summary;  // printed to stdout in task order
    std::string error;
};

// Runs tasks over a worker pool; results keep input order so output is
// identical for any job count.
int run_tasks(std::size_t count, int jobs,
              const std::function<void(std::size_t, TaskResult&)>& fn) {
    std::vector<TaskResult> results(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                fn(i, results[i]);
            } catch (const std::exception& e) {
                results[i].ok = false;
                results[i].error = e.what();
            }
        }
    };
    const int n_workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    int failures = 0;
    for (const auto& r : results) {
        if (!r.summary.empty()) {
            std::cout << r.summary;
        }
        if (!r.ok) {
            ++failures;
            std::cerr << "chronoalign: " << r.label << ": " << r.error << "\n";
        }
    }
    if (failures > 0) {
        std::cerr << "chronoalign: " << failures << " of " << count << " file(s) failed\n";
    }
    return failures == 0 ? 0 : 1;
}

std::vector<fs::path> list_dir(const fs::path& dir, const std::string& ext) {
    if (!fs::is_directory(dir)) {
        throw InputError("not a directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ext) {
            continue;
        }
        if (entry.path().filename().string().ends_with(".run.json")) {
            continue;  // run-manifest sidecars are never inputs
        }
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::string stem_of(const fs::path& p) {
    return p.stem().string();
}

// ---------------------------------------------------------------------------
// vad-segment

struct VadSegmentCmd {
    CommonOpts common;
    std::string probs_path;
    std::string out_path;
    std::string windows_out;
    std::string probs_dir;
    std::string out_dir;
    std::string windows_dir;

    int run() {
        require_usage(probs_dir.empty() != probs_path.empty(),
                      "vad-segment needs --probs/--out or --probs-dir/--out-dir");
        require_usage(probs_dir.empty() ? !out_path.empty() : !out_dir.empty(),
                      "vad-segment needs --probs/--out or --probs-dir/--out-dir");
        const PipelineConfig cfg = common.resolve();
        const std::string hash = config_hash(cfg);

        struct Job {
            fs::path in;
            fs::path out;
            fs::path windows;
        };
        std::vector<Job> jobs;
        if (!probs_dir.empty()) {
            fs::create_directories(out_dir);
            if (!windows_dir.empty()) {
                fs::create_directories(windows_dir);
            }
            for (const auto& f : list_dir(probs_dir, ".json")) {
                Job j{f, fs::path(out_dir) / (stem_of(f) + ".vad.json"), {}};
                if (!windows_dir.empty()) {
                    j.windows = fs::path(windows_dir) / (stem_of(f) + ".windows.json");
                }
                jobs.push_back(j);
            }
        } else {
            jobs.push_back({probs_path, out_path, windows_out});
        }

        return run_tasks(jobs.size(), common.jobs, [&](std::size_t i, TaskResult& res) {
            const Job& job = jobs[i];
            res.label = job.in.string();
            std::vector<InputRef> inputs;
            const auto doc = parse_frame_probs(read_input(job.in, inputs), common.lenient);
            const Timeline speech = hysteresis_segment(doc.probs, cfg.vad());
            emit_output(job.out, write_vad({doc.audio_id, speech}), "vad-segment", hash, inputs);
            res.summary = doc.audio_id + ": " + std::to_string(speech.size()) +
                          " speech region(s), " + seconds_str(speech.duration()) + " s\n";
            if (!job.windows.empty()) {
                const auto windows = merge_windows(speech, cfg.max_window, cfg.window_overlap);
                emit_output(job.windows, write_windows({doc.audio_id, windows}), "vad-segment",
                            hash, inputs);
            }
        });
    }
};

// ---------------------------------------------------------------------------
// align

struct AlignCmd {
    CommonOpts common;
    std::string hyp_path;
    std::string ref_path;
    std::string out_path;
    std::string hyp_dir;
    std::string ref_dir;
    std::string out_dir;

    int run() {
        require_usage(hyp_dir.empty() != hyp_path.empty(),
                      "align needs --hyp/--ref/--out or --hyp-dir/--ref-dir/--out-dir");
        require_usage(hyp_dir.empty() ? (!ref_path.empty() && !out_path.empty())
                                      : (!ref_dir.empty() && !out_dir.empty()),
                      "align needs --hyp/--ref/--out or --hyp-dir/--ref-dir/--out-dir");
        const PipelineConfig cfg = common.resolve();
        const std::string hash = config_hash(cfg);

        struct Job {
            fs::path hyp;
            fs::path ref;
            fs::path out;
        };
        std::vector<Job> jobs;
        if (!hyp_dir.empty()) {
            fs::create_directories(out_dir);
            for (const auto& f : list_dir(hyp_dir, ".json")) {
                jobs.push_back({f, fs::path(ref_dir) / (stem_of(f) + ".txt"),
                                fs::path(out_dir) / (stem_of(f) + ".json")});
            }
        } else {
            jobs.push_back({hyp_path, ref_path, out_path});
        }

        return run_tasks(jobs.size(), common.jobs, [&](std::size_t i, TaskResult& res) {
            const Job& job = jobs[i];
            res.label = job.hyp.string();
            std::vector<InputRef> inputs;
            const auto hyp_doc = parse_words(read_input(job.hyp, inputs), common.lenient);
            const auto ref_tokens = normalize_tokens(read_input(job.ref, inputs));
            const auto anchored = transfer_anchors(hyp_doc.timed_words(), ref_tokens);

            WordsDocument out_doc;
            out_doc.audio_id = hyp_doc.audio_id;
            std::size_t direct = 0;
            for (const auto& w : anchored) {
                out_doc.words.push_back({w.text, w.span, std::nullopt, w.anchor});
                direct += w.anchor == Anchor::direct ? 1 : 0;
            }
            emit_output(job.out, write_words(out_doc), "align", hash, inputs);
            char line[160];
            std::snprintf(line, sizeof(line), "%s: %zu word(s), %.1f%% direct anchors\n",
                          out_doc.audio_id.c_str(), anchored.size(),
                          anchored.empty() ? 0.0
                                           : 100.0 * static_cast<double>(direct) /
                                                 static_cast<double>(anchored.size()));
            res.summary = line;
        });
    }
};

// ---------------------------------------------------------------------------
// chunk

struct ChunkCmd {
    CommonOpts common;
    std::string words_path;
    std::string words_dir;
    std::string out_path;
    std::string stats_out;
    std::string train_out;
    std::string val_out;

    int run() {
        require_usage(words_dir.empty() != words_path.empty(),
                      "chunk needs --words or --words-dir");
        require_usage(train_out.empty() == val_out.empty(),
                      "--train-out and --val-out must be given together");
        const PipelineConfig cfg = common.resolve();
        const std::string hash = config_hash(cfg);

        std::vector<fs::path> files;
        if (!words_dir.empty()) {
            files = list_dir(words_dir, ".json");
        } else {
            files.push_back(words_path);
        }

        struct PerFile {
            std::vector<Chunk> retained;
        };
        std::vector<PerFile> partial(files.size());
        std::vector<InputRef> per_file_input(files.size());
        const int rc = run_tasks(files.size(), common.jobs, [&](std::size_t i, TaskResult& res) {
            res.label = files[i].string();
            std::vector<InputRef> inputs;
            const auto doc = parse_words(read_input(files[i], inputs), common.lenient);
            per_file_input[i] = inputs.front();
            const auto words = doc.anchored_words();
            auto chunks = greedy_partition(words, cfg.chunk_max, doc.audio_id);
            const std::size_t partitioned = chunks.size();
            std::size_t flagged = 0;
            for (const auto& c : chunks) {
                flagged += c.over_length ? 1 : 0;
            }
            chunks = filter_chunks(std::move(chunks), cfg.chunk_min, cfg.chunk_max);
            partial[i].retained = std::move(chunks);
            res.summary = doc.audio_id + ": " + std::to_string(partitioned) +
                          " chunk(s) partitioned, " + std::to_string(partial[i].retained.size()) +
                          " retained" +
                          (flagged > 0 ? ", " + std::to_string(flagged) + " over-length" : "") +
                          "\n";
        });
        if (rc != 0) {
            return rc;
        }

        std::vector<Chunk> corpus;
        for (auto& p : partial) {
            for (auto& c : p.retained) {
                c.chunk_id = static_cast<std::int64_t>(corpus.size());
                corpus.push_back(std::move(c));
            }
        }
        const std::vector<InputRef> inputs(per_file_input.begin(), per_file_input.end());
        emit_output(out_path, write_manifest(manifest_from_chunks(corpus)), "chunk", hash, inputs);

        if (corpus.empty()) {
            std::cout << "no chunks retained\n";
            return 0;
        }
        const ChunkStats stats = corpus_stats(corpus);
        std::cout << format_stats(stats);
        if (!stats_out.empty()) {
            std::string doc = "{\"schema_version\": 1";
            doc += ", \"total_chunks\": " + std::to_string(stats.total_chunks);
            doc += ", \"total_duration_hours\": " + double_str(stats.total_duration_hours);
            doc += ", \"mean_duration_s\": " + double_str(stats.mean_duration_s);
            doc += ", \"min_duration_s\": " + double_str(stats.min_duration_s) + "}\n";
            emit_output(stats_out, doc, "chunk", hash, inputs);
        }

        if (!train_out.empty()) {
            // Seeded Fisher-Yates over chunk indices; only the
            // standard-specified mt19937_64 stream is consumed, so the split
            // is identical on every platform.
            std::vector<std::size_t> order(corpus.size());
            for (std::size_t i = 0; i < order.size(); ++i) {
                order[i] = i;
            }
            Rng rng(cfg.split_seed);
            for (std::size_t i = order.size(); i-- > 1;) {
                std::swap(order[i], order[rng.below(i + 1)]);
            }
            const auto n_train = static_cast<std::size_t>(
                std::llround(cfg.train_frac * static_cast<double>(corpus.size())));
            std::vector<Chunk> train;
            std::vector<Chunk> val;
            for (std::size_t i = 0; i < order.size(); ++i) {
                (i < n_train ? train : val).push_back(corpus[order[i]]);
            }
            emit_output(train_out, write_manifest(manifest_from_chunks(train)), "chunk", hash,
                        inputs);
            emit_output(val_out, write_manifest(manifest_from_chunks(val)), "chunk", hash, inputs);
            std::cout << "split: " << train.size() << " train / " << val.size() << " val (seed "
                      << cfg.split_seed << ")\n";
        }
        return 0;
    }
};

// ---------------------------------------------------------------------------
// filter-text

struct FilterTextCmd {
    CommonOpts common;
    std::string in_path;
    std::string out_path;
    std::string in_dir;
    std::string out_dir;
    std::string blacklist_path;

    int run() {
        require_usage(in_dir.empty() != in_path.empty(),
                      "filter-text needs --in/--out or --in-dir/--out-dir");
        require_usage(in_dir.empty() ? !out_path.empty() : !out_dir.empty(),
                      "filter-text needs --in/--out or --in-dir/--out-dir");
        const PipelineConfig cfg = common.resolve();
        const std::string hash = config_hash(cfg);
        std::vector<std::string> phrases;
        std::string blacklist_digest;
        if (!blacklist_path.empty()) {
            const std::string content = read_file(blacklist_path);
            blacklist_digest = sha256_hex(content);
            phrases = read_lines(blacklist_path);
        }

        struct Job {
            fs::path in;
            fs::path out;
        };
        std::vector<Job> jobs;
        if (!in_dir.empty()) {
            fs::create_directories(out_dir);
            for (const auto& f : list_dir(in_dir, ".txt")) {
                jobs.push_back({f, fs::path(out_dir) / f.filename()});
            }
        } else {
            jobs.push_back({in_path, out_path});
        }

        return run_tasks(jobs.size(), common.jobs, [&](std::size_t i, TaskResult& res) {
            const Job& job = jobs[i];
            res.label = job.in.string();
            std::vector<InputRef> inputs;
            std::string text = read_input(job.in, inputs);
            if (!blacklist_path.empty()) {
                inputs.push_back({blacklist_path, blacklist_digest});
                text = apply_blacklist(text, phrases);
            }
            const auto tokens = collapse_repetitions(normalize_tokens(text), cfg.repetition());
            std::string joined;
            for (const auto& t : tokens) {
                if (!joined.empty()) {
                    joined.push_back(' ');
                }
                joined += t;
            }
            joined.push_back('\n');
            emit_output(job.out, joined, "filter-text", hash, inputs);
            res.summary = job.in.filename().string() + ": " + std::to_string(tokens.size()) +
                          " token(s)\n";
        });
    }
};

// ---------------------------------------------------------------------------
// diar-post

struct DiarPostCmd {
    CommonOpts common;
    std::string in_path;
    std::string out_path;
    std::string in_dir;
    std::string out_dir;
    std::string vad_path;
    std::string vad_dir;
    std::string emb_path;
    std::string emb_dir;
    bool exclusive = true;
    bool fill_gaps = true;
    bool merge = true;
    bool purge = true;
    bool repurge = true;

    static Diarization cluster_relabel(const Diarization& d, const EmbeddingsDocument& embs,
                                       double threshold) {
        const std::vector<int> labels = agglomerative_cluster(embs.embeddings, threshold);
        std::vector<SpeakerSegment> segments = d.segments();
        for (std::size_t e = 0; e < embs.embeddings.size(); ++e) {
            const auto idx = embs.embeddings[e].segment_ref;
            if (idx < 0 || static_cast<std::size_t>(idx) >= segments.size()) {
                throw ValidationError("embedding " + std::to_string(e) + " references segment " +
                                      std::to_string(idx) + " outside the diarization");
            }
            segments[static_cast<std::size_t>(idx)].speaker =
                "spk" + std::to_string(labels[e]);
        }
        return Diarization(std::move(segments));
    }

    Diarization apply_chain(Diarization d, const std::optional<Timeline>& vad,
                            const std::optional<EmbeddingsDocument>& embs,
                            const PipelineConfig& cfg) const {
        if (embs) {
            d = cluster_relabel(d, *embs, cfg.cluster_threshold);
        }
        if (exclusive) {
            d = exclusive_assign(d);
        }
        if (fill_gaps) {
            d = fill_intra_speaker_gaps(d, cfg.min_duration_off);
        }
        if (merge) {
            d = adaptive_merge(d, cfg.merge());
        }
        if (purge) {
            d = purge_transients(d, cfg.transient);
        }
        if (vad) {
            d = intersect_with_vad(d, *vad, repurge ? cfg.transient : 0);
        }
        return d;
    }

    struct Loaded {
        std::string file_id;
        Diarization diarization;
    };

    static Loaded load_diarization(const fs::path& path, std::string_view content, bool lenient) {
        if (path.extension() == ".csv") {
            return {stem_of(path), read_annotation_csv(content, lenient)};
        }
        auto by_file = read_rttm(content, lenient);
        if (by_file.size() != 1) {
            throw ValidationError(path.string() + ": expected exactly one file id, found " +
                                  std::to_string(by_file.size()));
        }
        return {by_file.begin()->first, std::move(by_file.begin()->second)};
    }

    int run() {
        require_usage(in_dir.empty() != in_path.empty(),
                      "diar-post needs --in/--out or --in-dir/--out-dir");
        require_usage(in_dir.empty() ? !out_path.empty() : !out_dir.empty(),
                      "diar-post needs --in/--out or --in-dir/--out-dir");
        const PipelineConfig cfg = common.resolve();
        const std::string hash = config_hash(cfg);

        struct Job {
            fs::path in;
            fs::path out;
            fs::path vad;
            fs::path emb;
        };
        std::vector<Job> jobs;
        if (!in_dir.empty()) {
            fs::create_directories(out_dir);
            std::vector<fs::path> files = list_dir(in_dir, ".rttm");
            for (const auto& f : list_dir(in_dir, ".csv")) {
                files.push_back(f);
            }
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                Job j{f, fs::path(out_dir) / (stem_of(f) + ".rttm"), {}, {}};
                if (!vad_dir.empty()) {
                    j.vad = fs::path(vad_dir) / (stem_of(f) + ".vad.json");
                }
                if (!emb_dir.empty()) {
                    j.emb = fs::path(emb_dir) / (stem_of(f) + ".emb.json");
                }
                jobs.push_back(j);
            }
        } else {
            jobs.push_back({in_path, out_path, vad_path, emb_path});
        }

        return run_tasks(jobs.size(), common.jobs, [&](std::size_t i, TaskResult& res) {
            const Job& job = jobs[i];
            res.label = job.in.string();
            std::vector<InputRef> inputs;
            const Loaded in = load_diarization(job.in, read_input(job.in, inputs), common.lenient);
            std::optional<Timeline> vad;
            if (!job.vad.empty()) {
                vad = parse_vad(read_input(job.vad, inputs), common.lenient).speech;
            }
            std::optional<EmbeddingsDocument> embs;
            if (!job.emb.empty()) {
                embs = parse_embeddings(read_input(job.emb, inputs), common.lenient);
            }
            const Diarization out = apply_chain(in.diarization, vad, embs, cfg);
            emit_output(job.out, write_rttm(out, in.file_id), "diar-post", hash, inputs);
            res.summary = in.file_id + ": " + std::to_string(in.diarization.size()) + " -> " +
                          std::to_string(out.size()) + " segment(s), " +
                          std::to_string(out.speakers().size()) + " speaker(s)\n";
        });
    }
};

// ---------------------------------------------------------------------------
// score

struct ScoreCmd {
    CommonOpts common;
    bool is_wer = false;
    std::string ref_path;
    std::string hyp_path;
    std::string ref_dir;
    std::string hyp_dir;
    std::string json_out;
    bool weighted = false;
    bool self_check = false;
    std::string vad_path;  // self-check containment mask

    int run_self_check() {
        std::vector<InputRef> inputs;
        const auto loaded =
            DiarPostCmd::load_diarization(hyp_path, read_input(hyp_path, inputs), common.lenient);
        const Diarization& d = loaded.diarization;
        bool ok = true;
        if (d.exclusive()) {
            std::cout << "exclusive: ok\n";
        } else {
            ok = false;
            std::cout << "exclusive: VIOLATED (overlapping segments present)\n";
        }
        if (!vad_path.empty()) {
            const Timeline vad = parse_vad(read_input(vad_path, inputs), common.lenient).speech;
            std::size_t outside = 0;
            for (const auto& s : d.segments()) {
                if (!vad.covers(s.span)) {
                    ++outside;
                }
            }
            if (outside == 0) {
                std::cout << "vad containment: ok\n";
            } else {
                ok = false;
                std::cout << "vad containment: VIOLATED (" << outside
                          << " segment(s) outside the mask)\n";
            }
        }
        return ok ? 0 : 1;
    }

    int run() {
        if (self_check) {
            require_usage(!hyp_path.empty(), "--self-check needs --hyp");
            return run_self_check();
        }
        require_usage(hyp_dir.empty() != hyp_path.empty(),
                      "score needs --ref/--hyp or --ref-dir/--hyp-dir");
        require_usage(hyp_dir.empty() ? !ref_path.empty() : !ref_dir.empty(),
                      "score needs --ref/--hyp or --ref-dir/--hyp-dir");
        const PipelineConfig cfg = common.resolve();
        const std::string hash = config_hash(cfg);

        struct Pair {
            std::string id;
            fs::path ref;
            fs::path hyp;
        };
        std::vector<Pair> pairs;
        if (!hyp_dir.empty()) {
            const std::string ext = is_wer ? ".txt" : ".rttm";
            for (const auto& f : list_dir(hyp_dir, ext)) {
                pairs.push_back({stem_of(f), fs::path(ref_dir) / f.filename(), f});
            }
            if (pairs.empty()) {
                throw InputError("no " + ext + " inputs in " + hyp_dir);
            }
        } else {
            pairs.push_back({stem_of(fs::path(hyp_path)), ref_path, hyp_path});
        }

        struct Row {
            std::string id;
            WerBreakdown w;
            DerBreakdown d;
            double rate = 0.0;
            double weight = 0.0;
        };
        std::vector<Row> rows(pairs.size());
        std::vector<std::vector<InputRef>> inputs_per_pair(pairs.size());
        const int rc = run_tasks(pairs.size(), common.jobs, [&](std::size_t i, TaskResult& res) {
            const Pair& p = pairs[i];
            res.label = p.hyp.string();
            std::vector<InputRef>& inputs = inputs_per_pair[i];
            Row row;
            row.id = p.id;
            if (is_wer) {
                const auto ref_tokens = normalize_tokens(read_input(p.ref, inputs));
                const auto hyp_tokens = normalize_tokens(read_input(p.hyp, inputs));
                row.w = wer(ref_tokens, hyp_tokens);
                row.rate = row.w.wer();
                row.weight = static_cast<double>(row.w.ref_len);
                char line[256];
                std::snprintf(line, sizeof(line), "%s: wer %.3f (S=%zu D=%zu I=%zu N=%zu)\n",
                              p.id.c_str(), row.rate, row.w.substitutions, row.w.deletions,
                              row.w.insertions, row.w.ref_len);
                res.summary = line;
            } else {
                const auto ref_map = read_rttm(read_input(p.ref, inputs), common.lenient);
                const auto hyp_map = read_rttm(read_input(p.hyp, inputs), common.lenient);
                if (ref_map.size() != 1 || hyp_map.size() != 1) {
                    throw ValidationError(p.hyp.string() +
                                          ": scoring expects exactly one file id per rttm");
                }
                row.d = der(ref_map.begin()->second, hyp_map.begin()->second, cfg.collar);
                row.rate = row.d.der();
                row.weight = seconds_from_ms(row.d.ref_speech);
                char line[256];
                std::snprintf(line, sizeof(line),
                              "%s: der %.3f (miss %s, fa %s, conf %s, ref %s s)\n", p.id.c_str(),
                              row.rate, seconds_str(row.d.missed).c_str(),
                              seconds_str(row.d.false_alarm).c_str(),
                              seconds_str(row.d.confusion).c_str(),
                              seconds_str(row.d.ref_speech).c_str());
                res.summary = line;
            }
            rows[i] = std::move(row);
        });
        if (rc != 0) {
            return rc;
        }

        std::vector<FileRate> per_file;
        per_file.reserve(rows.size());
        for (const auto& r : rows) {
            per_file.push_back({r.id, r.rate, r.weight});
        }
        const double corpus = aggregate(per_file, weighted);
        char agg[128];
        if (pairs.size() > 1) {
            std::snprintf(agg, sizeof(agg), "%s %.3f\n",
                          weighted ? "corpus (weighted)" : "corpus (mean)", corpus);
        } else {
            std::snprintf(agg, sizeof(agg), "%s %.3f\n", is_wer ? "wer" : "der",
                          rows.front().rate);
        }
        std::cout << agg;

        if (!json_out.empty()) {
            std::vector<InputRef> all_inputs;
            for (const auto& chunk : inputs_per_pair) {
                all_inputs.insert(all_inputs.end(), chunk.begin(), chunk.end());
            }
            std::string doc = "{\"schema_version\": 1, \"metric\": \"";
            doc += is_wer ? "wer" : "der";
            doc += "\", \"files\": [";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const Row& r = rows[i];
                doc += i == 0 ? "\n" : ",\n";
                doc += "  {\"id\": \"" + r.id + "\", \"rate\": " + double_str(r.rate);
                if (is_wer) {
                    doc += ", \"substitutions\": " + std::to_string(r.w.substitutions);
                    doc += ", \"deletions\": " + std::to_string(r.w.deletions);
                    doc += ", \"insertions\": " + std::to_string(r.w.insertions);
                    doc += ", \"ref_len\": " + std::to_string(r.w.ref_len);
                } else {
                    doc += ", \"missed_s\": " + seconds_str(r.d.missed);
                    doc += ", \"false_alarm_s\": " + seconds_str(r.d.false_alarm);
                    doc += ", \"confusion_s\": " + seconds_str(r.d.confusion);
                    doc += ", \"ref_speech_s\": " + seconds_str(r.d.ref_speech);
                }
                doc += "}";
            }
            doc += rows.empty() ? "]" : "\n]";
            doc += ", \"aggregate\": {\"rate\": " + double_str(corpus);
            doc += ", \"weighted\": " + std::string(weighted ? "true" : "false") + "}}\n";
            emit_output(json_out, doc, is_wer ? "score wer" : "score der", hash, all_inputs);
        }
        return 0;
    }
};

// ---------------------------------------------------------------------------
// sweep

struct SweepCmd {
    CommonOpts common;
    std::string metric = "der";
    std::string grid_spec;
    std::string ref_dir;
    std::string hyp_dir;
    std::string vad_dir;
    std::string emb_dir;
    std::string blacklist_path;
    std::string out_path;
    bool weighted = false;

    static std::map<std::string, std::vector<double>> parse_grid(const std::string& spec) {
        std::map<std::string, std::vector<double>> grid;
        std::size_t start = 0;
        while (start < spec.size()) {
            std::size_t semi = spec.find(';', start);
            if (semi == std::string::npos) {
                semi = spec.size();
            }
            const std::string part = spec.substr(start, semi - start);
            start = semi + 1;
            if (part.empty()) {
                continue;
            }
            const std::size_t eq = part.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("grid entry '" + part + "': expected key=v1,v2,...");
            }
            const std::string key = part.substr(0, eq);
            std::vector<double> values;
            std::size_t vstart = eq + 1;
            while (vstart <= part.size()) {
                std::size_t comma = part.find(',', vstart);
                if (comma == std::string::npos) {
                    comma = part.size();
                }
                const std::string v = part.substr(vstart, comma - vstart);
                vstart = comma + 1;
                if (v.empty()) {
                    continue;
                }
                std::size_t consumed = 0;
                double value = 0.0;
                try {
                    value = std::stod(v, &consumed);
                } catch (const std::exception&) {
                    throw ConfigError("grid entry '" + key + "': not a number: '" + v + "'");
                }
                if (consumed != v.size()) {
                    throw ConfigError("grid entry '" + key + "': not a number: '" + v + "'");
                }
                values.push_back(value);
            }
            if (values.empty()) {
                throw ConfigError("grid entry '" + key + "' has no values");
            }
            grid[key] = values;
        }
        if (grid.empty()) {
            throw ConfigError("empty sweep grid");
        }
        return grid;
    }

    int run() {
        const PipelineConfig base = common.resolve();
        const auto grid = parse_grid(grid_spec);
        std::vector<std::string> phrases;
        if (!blacklist_path.empty()) {
            phrases = read_lines(blacklist_path);
        }

        const std::string ext = metric == "wer" ? ".txt" : ".rttm";
        const auto hyp_files = list_dir(hyp_dir, ext);
        if (hyp_files.empty()) {
            throw InputError("no " + ext + " inputs in " + hyp_dir);
        }

        auto evaluate = [&](const std::map<std::string, double>& params) {
            PipelineConfig cfg = base;
            for (const auto& [key, value] : params) {
                cfg.set_numeric(key, value);
            }
            cfg.validate();
            std::vector<FileRate> per_file;
            for (const auto& hyp_file : hyp_files) {
                const std::string id = stem_of(hyp_file);
                if (metric == "wer") {
                    const auto ref_tokens =
                        normalize_tokens(read_file(fs::path(ref_dir) / (id + ".txt")));
                    std::string text = read_file(hyp_file);
                    if (!phrases.empty()) {
                        text = apply_blacklist(text, phrases);
                    }
                    const auto hyp_tokens =
                        collapse_repetitions(normalize_tokens(text), cfg.repetition());
                    const auto w = wer(ref_tokens, hyp_tokens);
                    per_file.push_back({id, w.wer(), static_cast<double>(w.ref_len)});
                } else {
                    const auto ref_map =
                        read_rttm(read_file(fs::path(ref_dir) / (id + ".rttm")), common.lenient);
                    const auto hyp_map = read_rttm(read_file(hyp_file), common.lenient);
                    if (ref_map.size() != 1 || hyp_map.size() != 1) {
                        throw ValidationError(id + ": expected one file id per rttm");
                    }
                    DiarPostCmd chain;
                    std::optional<Timeline> vad;
                    if (!vad_dir.empty()) {
                        vad = parse_vad(read_file(fs::path(vad_dir) / (id + ".vad.json")),
                                        common.lenient)
                                  .speech;
                    }
                    std::optional<EmbeddingsDocument> embs;
                    if (!emb_dir.empty()) {
                        embs = parse_embeddings(read_file(fs::path(emb_dir) / (id + ".emb.json")),
                                                common.lenient);
                    }
                    const Diarization post =
                        chain.apply_chain(hyp_map.begin()->second, vad, embs, cfg);
                    const auto d = der(ref_map.begin()->second, post, cfg.collar);
                    per_file.push_back({id, d.der(), seconds_from_ms(d.ref_speech)});
                }
            }
            return aggregate(per_file, weighted);
        };

        const auto rows = sweep_grid(grid, evaluate);

        std::string header = "  " + metric;
        for (const auto& [key, values] : grid) {
            header += "  " + key;
        }
        std::cout << header << "\n";
        for (const auto& row : rows) {
            std::string line = row.best ? "* " : "  ";
            if (row.ok) {
                char score_buf[64];
                std::snprintf(score_buf, sizeof(score_buf), "%.4f", row.score);
                line += score_buf;
            } else {
                line += "failed";
            }
            for (const auto& [key, value] : row.params) {
                line += "  " + double_str(value);
            }
            if (!row.ok) {
                line += "  # " + row.error;
            }
            std::cout << line << "\n";
        }

        if (!out_path.empty()) {
            std::string doc = "{\"schema_version\": 1, \"metric\": \"" + metric + "\", \"rows\": [";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& row = rows[i];
                doc += i == 0 ? "\n" : ",\n";
                doc += "  {\"params\": {";
                bool first = true;
                for (const auto& [key, value] : row.params) {
                    if (!first) {
                        doc += ", ";
                    }
                    first = false;
                    doc += "\"" + key + "\": " + double_str(value);
                }
                doc += "}, \"ok\": " + std::string(row.ok ? "true" : "false");
                if (row.ok) {
                    doc += ", \"score\": " + double_str(row.score);
                } else {
                    std::string msg = row.error;
                    for (char& c : msg) {
                        if (c == '"' || c == '\\' || c == '\n') {
                            c = ' ';
                        }
                    }
                    doc += ", \"error\": \"" + msg + "\"";
                }
                doc += ", \"best\": " + std::string(row.best ? "true" : "false") + "}";
            }
            doc += rows.empty() ? "]}\n" : "\n]}\n";
            write_file_atomic(out_path, doc);
            write_run_manifest(out_path, "sweep", sha256_hex(base.canonical_str() + grid_spec),
                               {});
        }
        return 0;
    }
};

// ---------------------------------------------------------------------------
// simulate

struct SimulateCmd {
    CommonOpts common;
    std::string out_dir;
    int count = 1;
    SimConfig sim;
    double duration_s = 60.0;
    double timestamp_jitter_s = 0.0;
    double boundary_jitter_s = 0.0;

    int run() {
        sim.total_duration = ms_from_seconds(duration_s);
        sim.timestamp_jitter = ms_from_seconds(timestamp_jitter_s);
        sim.boundary_jitter = ms_from_seconds(boundary_jitter_s);
        sim.validate();
        fs::create_directories(out_dir);
        const std::uint64_t base_seed = sim.seed;

        // The sim parameters are the whole configuration of this command.
        const std::string sim_desc = "seed=" + std::to_string(base_seed) +
                                     ";n_speakers=" + std::to_string(sim.n_speakers) +
                                     ";total=" + seconds_str(sim.total_duration) +
                                     ";sub=" + double_str(sim.sub_rate) +
                                     ";del=" + double_str(sim.del_rate) +
                                     ";ins=" + double_str(sim.ins_rate) +
                                     ";tj=" + seconds_str(sim.timestamp_jitter) +
                                     ";bj=" + seconds_str(sim.boundary_jitter) +
                                     ";spur=" + double_str(sim.spurious_rate) +
                                     ";vocab=" + std::to_string(sim.vocab_size) +
                                     ";noise=" + double_str(sim.prob_noise) +
                                     ";count=" + std::to_string(count);
        const std::string hash = sha256_hex(sim_desc);

        const fs::path dir(out_dir);
        for (const char* sub : {"probs", "ref", "truth-words", "hyp-words", "truth-rttm",
                                "hyp-rttm", "vad", "expected"}) {
            fs::create_directories(dir / sub);
        }
        return run_tasks(static_cast<std::size_t>(count), common.jobs,
                         [&](std::size_t i, TaskResult& res) {
            char name[32];
            std::snprintf(name, sizeof(name), "sim_%03zu", i);
            res.label = name;
            SimConfig cfg = sim;
            cfg.seed = base_seed + i;
            const Truth truth = generate_truth(cfg);
            const Perturbed hyp = perturb(truth, cfg);
            auto put = [&](const std::string& sub, const std::string& file,
                           const std::string& content) {
                emit_output(dir / sub / file, content, "simulate", hash, {});
            };
            put("truth-rttm", std::string(name) + ".rttm", write_rttm(truth.diarization, name));
            put("hyp-rttm", std::string(name) + ".rttm", write_rttm(hyp.hyp_diarization, name));
            std::string ref_text;
            for (const auto& w : truth.words) {
                if (!ref_text.empty()) {
                    ref_text.push_back(' ');
                }
                ref_text += w.text;
            }
            ref_text.push_back('\n');
            put("ref", std::string(name) + ".txt", ref_text);
            WordsDocument truth_words{name, {}};
            for (const auto& w : truth.words) {
                truth_words.words.push_back({w.text, w.span, std::nullopt, std::nullopt});
            }
            put("truth-words", std::string(name) + ".json", write_words(truth_words));
            WordsDocument hyp_words{name, {}};
            for (const auto& w : hyp.hyp_words) {
                hyp_words.words.push_back({w.text, w.span, std::nullopt, std::nullopt});
            }
            put("hyp-words", std::string(name) + ".json", write_words(hyp_words));
            put("probs", std::string(name) + ".json", write_frame_probs({name, truth.probs}));
            put("vad", std::string(name) + ".vad.json", write_vad({name, truth.speech()}));
            std::string expected = "{\"schema_version\": 1, \"id\": \"" + std::string(name) + "\"";
            expected += ", \"ref_len\": " + std::to_string(truth.words.size());
            expected += ", \"substitutions\": " + std::to_string(hyp.substitutions);
            expected += ", \"deletions\": " + std::to_string(hyp.deletions);
            expected += ", \"insertions\": " + std::to_string(hyp.insertions);
            expected += ", \"boundaries_moved\": " + std::to_string(hyp.boundaries_moved);
            expected += ", \"max_boundary_shift_s\": " + seconds_str(hyp.max_boundary_shift);
            expected += ", \"spurious_duration_s\": " + seconds_str(hyp.spurious_duration) + "}\n";
            put("expected", std::string(name) + ".json", expected);
            res.summary = std::string(name) + ": " + std::to_string(truth.words.size()) +
                          " word(s), " + std::to_string(truth.diarization.size()) +
                          " segment(s)\n";
        });
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) +
                 ": boundary-respecting chunking, timestamp transfer, diarization "
                 "post-processing, and WER/DER scoring for long-form speech pipelines"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolName);

    VadSegmentCmd vad_cmd;
    auto* vad_sub = app.add_subcommand(
        "vad-segment", "Frame probabilities -> speech timeline (and inference windows)");
    add_common_opts(vad_sub, vad_cmd.common);
    vad_sub->add_option("--probs", vad_cmd.probs_path, "Frame-probs document");
    vad_sub->add_option("--out", vad_cmd.out_path, "Output VAD document");
    vad_sub->add_option("--windows-out", vad_cmd.windows_out, "Optional windows document");
    vad_sub->add_option("--probs-dir", vad_cmd.probs_dir, "Directory of frame-probs documents");
    vad_sub->add_option("--out-dir", vad_cmd.out_dir, "Output directory");
    vad_sub->add_option("--windows-dir", vad_cmd.windows_dir, "Windows output directory");

    AlignCmd align_cmd;
    auto* align_sub = app.add_subcommand(
        "align", "Transfer hypothesis word timestamps onto ground-truth tokens");
    add_common_opts(align_sub, align_cmd.common);
    align_sub->add_option("--hyp", align_cmd.hyp_path, "Hypothesis words document");
    align_sub->add_option("--ref", align_cmd.ref_path, "Ground-truth transcript (.txt)");
    align_sub->add_option("--out", align_cmd.out_path, "Aligned words document");
    align_sub->add_option("--hyp-dir", align_cmd.hyp_dir, "Directory of words documents");
    align_sub->add_option("--ref-dir", align_cmd.ref_dir, "Directory of .txt references");
    align_sub->add_option("--out-dir", align_cmd.out_dir, "Output directory");

    ChunkCmd chunk_cmd;
    auto* chunk_sub = app.add_subcommand(
        "chunk", "Partition aligned words into bounded chunks; optional seeded split");
    add_common_opts(chunk_sub, chunk_cmd.common);
    chunk_sub->add_option("--words", chunk_cmd.words_path, "Aligned words document");
    chunk_sub->add_option("--words-dir", chunk_cmd.words_dir, "Directory of aligned documents");
    chunk_sub->add_option("--out", chunk_cmd.out_path, "Chunk manifest (jsonl)")->required();
    chunk_sub->add_option("--stats-out", chunk_cmd.stats_out, "Corpus stats JSON");
    chunk_sub->add_option("--train-out", chunk_cmd.train_out, "Train-split manifest");
    chunk_sub->add_option("--val-out", chunk_cmd.val_out, "Validation-split manifest");

    FilterTextCmd filter_cmd;
    auto* filter_sub = app.add_subcommand(
        "filter-text", "Normalize transcripts and strip hallucination artifacts");
    add_common_opts(filter_sub, filter_cmd.common);
    filter_sub->add_option("--in", filter_cmd.in_path, "Raw transcript (.txt)");
    filter_sub->add_option("--out", filter_cmd.out_path, "Filtered transcript");
    filter_sub->add_option("--in-dir", filter_cmd.in_dir, "Directory of transcripts");
    filter_sub->add_option("--out-dir", filter_cmd.out_dir, "Output directory");
    filter_sub->add_option("--blacklist", filter_cmd.blacklist_path,
                           "Boilerplate phrases, one per line");

    DiarPostCmd diar_cmd;
    auto* diar_sub =
        app.add_subcommand("diar-post", "Diarization post-processing chain (rttm/csv -> rttm)");
    add_common_opts(diar_sub, diar_cmd.common);
    diar_sub->add_option("--in", diar_cmd.in_path, "Input diarization (.rttm or .csv)");
    diar_sub->add_option("--out", diar_cmd.out_path, "Output RTTM");
    diar_sub->add_option("--in-dir", diar_cmd.in_dir, "Directory of diarizations");
    diar_sub->add_option("--out-dir", diar_cmd.out_dir, "Output directory");
    diar_sub->add_option("--vad", diar_cmd.vad_path, "VAD document for dual-VAD intersection");
    diar_sub->add_option("--vad-dir", diar_cmd.vad_dir, "Directory of VAD documents");
    diar_sub->add_option("--embeddings", diar_cmd.emb_path, "Embeddings document for clustering");
    diar_sub->add_option("--embeddings-dir", diar_cmd.emb_dir, "Directory of embeddings");
    diar_sub->add_flag("--exclusive,!--no-exclusive", diar_cmd.exclusive,
                       "Resolve overlaps to the earliest dominant speaker (default on)");
    diar_sub->add_flag("--fill-gaps,!--no-fill-gaps", diar_cmd.fill_gaps,
                       "Bridge short intra-speaker gaps (default on)");
    diar_sub->add_flag("--adaptive-merge,!--no-adaptive-merge", diar_cmd.merge,
                       "Density-adaptive segment merging (default on)");
    diar_sub->add_flag("--purge,!--no-purge", diar_cmd.purge,
                       "Purge transient segments (default on)");
    diar_sub->add_flag("--repurge,!--no-repurge", diar_cmd.repurge,
                       "Re-purge slivers created by the VAD intersection (default on)");

    ScoreCmd score_cmd;
    auto* score_sub = app.add_subcommand("score", "Score transcripts (wer) or diarizations (der)");
    score_sub->require_subcommand(1);
    auto* wer_sub = score_sub->add_subcommand("wer", "Word error rate, file level");
    auto* der_sub = score_sub->add_subcommand("der", "Diarization error rate, file level");
    for (auto* sub : {wer_sub, der_sub}) {
        add_common_opts(sub, score_cmd.common);
        sub->add_option("--ref", score_cmd.ref_path, "Reference file");
        sub->add_option("--hyp", score_cmd.hyp_path, "Hypothesis file");
        sub->add_option("--ref-dir", score_cmd.ref_dir, "Directory of references");
        sub->add_option("--hyp-dir", score_cmd.hyp_dir, "Directory of hypotheses");
        sub->add_option("--json-out", score_cmd.json_out, "Machine-readable results file");
        sub->add_flag("--weighted", score_cmd.weighted,
                      "Weight corpus aggregate by reference size");
    }
    der_sub->add_flag("--self-check", score_cmd.self_check,
                      "Validate hypothesis invariants instead of scoring");
    der_sub->add_option("--vad", score_cmd.vad_path, "VAD mask for --self-check containment");

    SweepCmd sweep_cmd;
    auto* sweep_sub =
        app.add_subcommand("sweep", "Grid search over pipeline tunables against a corpus");
    add_common_opts(sweep_sub, sweep_cmd.common);
    sweep_sub->add_option("--metric", sweep_cmd.metric, "der or wer")
        ->check(CLI::IsMember({"der", "wer"}));
    sweep_sub
        ->add_option("--grid", sweep_cmd.grid_spec,
                     "e.g. cluster_threshold=0.55,0.58;transient=0.1,0.15")
        ->required();
    sweep_sub->add_option("--ref-dir", sweep_cmd.ref_dir, "Reference directory")->required();
    sweep_sub->add_option("--hyp-dir", sweep_cmd.hyp_dir, "Hypothesis directory")->required();
    sweep_sub->add_option("--vad-dir", sweep_cmd.vad_dir, "VAD documents for diar-post");
    sweep_sub->add_option("--embeddings-dir", sweep_cmd.emb_dir, "Embeddings for clustering");
    sweep_sub->add_option("--blacklist", sweep_cmd.blacklist_path, "Blacklist for wer sweeps");
    sweep_sub->add_option("--out", sweep_cmd.out_path, "Results JSON");
    sweep_sub->add_flag("--weighted", sweep_cmd.weighted, "Weighted corpus aggregation");

    SimulateCmd sim_cmd;
    auto* sim_sub = app.add_subcommand(
        "simulate", "Generate synthetic recordings with recorded perturbation scripts");
    add_common_opts(sim_sub, sim_cmd.common);
    sim_sub->add_option("--out-dir", sim_cmd.out_dir, "Output directory")->required();
    sim_sub->add_option("--count", sim_cmd.count, "Number of recordings")
        ->check(CLI::PositiveNumber);
    sim_sub->add_option("--seed", sim_cmd.sim.seed, "Base seed (recording i uses seed + i)");
    sim_sub->add_option("--n-speakers", sim_cmd.sim.n_speakers, "Speakers per recording");
    sim_sub->add_option("--duration", sim_cmd.duration_s, "Recording length in seconds");
    sim_sub->add_option("--vocab-size", sim_cmd.sim.vocab_size,
                        "0: unique sequential tokens; >0: sampled vocabulary");
    sim_sub->add_option("--prob-noise", sim_cmd.sim.prob_noise, "Probability flutter in [0,0.25)");
    sim_sub->add_option("--sub-rate", sim_cmd.sim.sub_rate, "Word substitution rate");
    sim_sub->add_option("--del-rate", sim_cmd.sim.del_rate, "Word deletion rate");
    sim_sub->add_option("--ins-rate", sim_cmd.sim.ins_rate, "Word insertion rate");
    sim_sub->add_option("--timestamp-jitter", sim_cmd.timestamp_jitter_s,
                        "Word timestamp jitter in seconds");
    sim_sub->add_option("--boundary-jitter", sim_cmd.boundary_jitter_s,
                        "Diarization boundary jitter in seconds");
    sim_sub->add_option("--spurious-rate", sim_cmd.sim.spurious_rate,
                        "Spurious speaker segment rate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (vad_sub->parsed()) {
            return vad_cmd.run();
        }
        if (align_sub->parsed()) {
            return align_cmd.run();
        }
        if (chunk_sub->parsed()) {
            return chunk_cmd.run();
        }
        if (filter_sub->parsed()) {
            return filter_cmd.run();
        }
        if (diar_sub->parsed()) {
            return diar_cmd.run();
        }
        if (score_sub->parsed()) {
            score_cmd.is_wer = wer_sub->parsed();
            return score_cmd.run();
        }
        if (sweep_sub->parsed()) {
            return sweep_cmd.run();
        }
        if (sim_sub->parsed()) {
            return sim_cmd.run();
        }
    } catch (const UsageError& e) {
        std::cerr << "chronoalign: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "chronoalign: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
