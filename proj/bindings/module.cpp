// Python bindings for the core operations. Times cross the boundary as
// seconds (floats) and are quantized onto the library's millisecond clock;
// timelines are lists of (start, end) pairs and diarizations lists of
// (start, end, speaker) triples.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;
using namespace chronoalign;

namespace {

using PyIntervals = std::vector<std::pair<double, double>>;
using PySegments = std::vector<std::tuple<double, double, std::string>>;
using PyWords = std::vector<std::tuple<std::string, double, double>>;
using PyAnchored = std::vector<std::tuple<std::string, double, double, std::string>>;

Timeline timeline_in(const PyIntervals& intervals) {
    std::vector<Interval> ivs;
    ivs.reserve(intervals.size());
    for (const auto& [s, e] : intervals) {
        ivs.push_back({ms_from_seconds(s), ms_from_seconds(e)});
    }
    return Timeline(std::move(ivs));
}

PyIntervals timeline_out(const Timeline& t) {
    PyIntervals out;
    out.reserve(t.size());
    for (const auto& iv : t.intervals()) {
        out.emplace_back(seconds_from_ms(iv.start), seconds_from_ms(iv.end));
    }
    return out;
}

Diarization diarization_in(const PySegments& segments) {
    std::vector<SpeakerSegment> segs;
    segs.reserve(segments.size());
    for (const auto& [s, e, spk] : segments) {
        segs.push_back({{ms_from_seconds(s), ms_from_seconds(e)}, spk});
    }
    return Diarization(std::move(segs));
}

PySegments diarization_out(const Diarization& d) {
    PySegments out;
    out.reserve(d.size());
    for (const auto& s : d.segments()) {
        out.emplace_back(seconds_from_ms(s.span.start), seconds_from_ms(s.span.end), s.speaker);
    }
    return out;
}

std::vector<TimedWord> words_in(const PyWords& words) {
    std::vector<TimedWord> out;
    out.reserve(words.size());
    for (const auto& [text, s, e] : words) {
        out.push_back({text, {ms_from_seconds(s), ms_from_seconds(e)}});
    }
    return out;
}

PyAnchored anchored_out(const std::vector<AnchoredWord>& words) {
    PyAnchored out;
    out.reserve(words.size());
    for (const auto& w : words) {
        out.emplace_back(w.text, seconds_from_ms(w.span.start), seconds_from_ms(w.span.end),
                         anchor_name(w.anchor));
    }
    return out;
}

std::vector<AnchoredWord> anchored_in(const PyAnchored& words) {
    std::vector<AnchoredWord> out;
    out.reserve(words.size());
    for (const auto& [text, s, e, anchor] : words) {
        const auto a = anchor_from_name(anchor);
        if (!a) {
            throw InputError("unknown anchor class '" + anchor + "'");
        }
        out.push_back({text, {ms_from_seconds(s), ms_from_seconds(e)}, *a});
    }
    return out;
}

const char* match_kind_name(MatchKind k) {
    switch (k) {
        case MatchKind::Equal:
            return "equal";
        case MatchKind::Replace:
            return "replace";
        case MatchKind::Delete:
            return "delete";
        case MatchKind::Insert:
            return "insert";
    }
    return "?";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Timeline algebra, VAD hysteresis, timestamp transfer, chunking, diarization "
              "post-processing, and WER/DER scoring for long-form speech pipelines";
#ifdef CHRONOALIGN_VERSION
    m.attr("__version__") = CHRONOALIGN_VERSION;
#else
    m.attr("__version__") = "dev";
#endif

    py::register_exception<Error>(m, "ChronoalignError", PyExc_ValueError);

    // Timeline algebra
    m.def("timeline_union",
          [](const PyIntervals& a, const PyIntervals& b) {
              return timeline_out(timeline_union(timeline_in(a), timeline_in(b)));
          },
          py::arg("a"), py::arg("b"));
    m.def("timeline_intersect",
          [](const PyIntervals& a, const PyIntervals& b) {
              return timeline_out(timeline_intersect(timeline_in(a), timeline_in(b)));
          },
          py::arg("a"), py::arg("b"));
    m.def("timeline_subtract",
          [](const PyIntervals& a, const PyIntervals& b) {
              return timeline_out(timeline_subtract(timeline_in(a), timeline_in(b)));
          },
          py::arg("a"), py::arg("b"));
    m.def("timeline_duration",
          [](const PyIntervals& t) { return seconds_from_ms(timeline_in(t).duration()); },
          py::arg("t"));

    py::class_<TimeMap>(m, "TimeMap",
                        "Map between concatenated-speech time and original-audio time")
        .def(py::init([](const PyIntervals& speech) { return TimeMap(timeline_in(speech)); }),
             py::arg("speech"))
        .def_property_readonly(
            "total_duration", [](const TimeMap& t) { return seconds_from_ms(t.total_duration()); })
        .def("to_original",
             [](const TimeMap& t, double s) {
                 return seconds_from_ms(t.to_original(ms_from_seconds(s)));
             },
             py::arg("t_concat"))
        .def("to_concat", [](const TimeMap& t, double s) {
            return seconds_from_ms(t.to_concat(ms_from_seconds(s)));
        }, py::arg("t_original"));

    // VAD
    m.def("hysteresis_segment",
          [](const std::vector<double>& probs, double frame_rate, double onset, double offset,
             double min_speech, double min_silence, double origin) {
              FrameProbs frames{frame_rate, probs, ms_from_seconds(origin)};
              VadConfig cfg{onset, offset, ms_from_seconds(min_speech),
                            ms_from_seconds(min_silence)};
              return timeline_out(hysteresis_segment(frames, cfg));
          },
          py::arg("probs"), py::arg("frame_rate") = 100.0, py::arg("onset") = 0.4,
          py::arg("offset") = 0.25, py::arg("min_speech") = 0.0, py::arg("min_silence") = 0.0,
          py::arg("origin") = 0.0);
    m.def("merge_windows",
          [](const PyIntervals& speech, double max_len, double overlap) {
              PyIntervals out;
              for (const auto& w : merge_windows(timeline_in(speech), ms_from_seconds(max_len),
                                                 ms_from_seconds(overlap))) {
                  out.emplace_back(seconds_from_ms(w.start), seconds_from_ms(w.end));
              }
              return out;
          },
          py::arg("speech"), py::arg("max_len") = 30.0, py::arg("overlap") = 1.0);

    // Timestamp transfer
    m.def("diff_match",
          [](const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
              std::vector<std::tuple<std::string, std::size_t, std::size_t, std::size_t,
                                     std::size_t>>
                  out;
              for (const auto& op : diff_match(hyp, ref)) {
                  out.emplace_back(match_kind_name(op.kind), op.hyp_begin, op.hyp_end,
                                   op.ref_begin, op.ref_end);
              }
              return out;
          },
          py::arg("hyp_tokens"), py::arg("ref_tokens"));
    m.def("transfer_anchors",
          [](const PyWords& hyp, const std::vector<std::string>& ref_tokens) {
              return anchored_out(transfer_anchors(words_in(hyp), ref_tokens));
          },
          py::arg("hyp_words"), py::arg("ref_tokens"));

    // Chunking
    py::class_<Chunk>(m, "Chunk")
        .def_readonly("chunk_id", &Chunk::chunk_id)
        .def_readonly("source_id", &Chunk::source_id)
        .def_property_readonly("start",
                               [](const Chunk& c) { return seconds_from_ms(c.span.start); })
        .def_property_readonly("end", [](const Chunk& c) { return seconds_from_ms(c.span.end); })
        .def_property_readonly("duration",
                               [](const Chunk& c) { return seconds_from_ms(c.duration()); })
        .def_readonly("over_length", &Chunk::over_length)
        .def_property_readonly("words", [](const Chunk& c) { return anchored_out(c.words); })
        .def_property_readonly("text", &Chunk::text)
        .def("__repr__", [](const Chunk& c) {
            return "Chunk(id=" + std::to_string(c.chunk_id) + ", [" + seconds_str(c.span.start) +
                   ", " + seconds_str(c.span.end) + "], words=" + std::to_string(c.words.size()) +
                   ")";
        });
    m.def("globalize",
          [](const PyWords& words, double window_start) {
              PyWords out;
              for (const auto& w : globalize(words_in(words), ms_from_seconds(window_start))) {
                  out.emplace_back(w.text, seconds_from_ms(w.span.start),
                                   seconds_from_ms(w.span.end));
              }
              return out;
          },
          py::arg("words"), py::arg("window_start"));
    m.def("greedy_partition",
          [](const PyAnchored& words, double max_dur, const std::string& source_id) {
              return greedy_partition(anchored_in(words), ms_from_seconds(max_dur), source_id);
          },
          py::arg("words"), py::arg("max_dur") = 28.0, py::arg("source_id") = "");
    m.def("filter_chunks",
          [](std::vector<Chunk> chunks, double min_dur, double max_dur) {
              return filter_chunks(std::move(chunks), ms_from_seconds(min_dur),
                                   ms_from_seconds(max_dur));
          },
          py::arg("chunks"), py::arg("min_dur") = 20.0, py::arg("max_dur") = 28.0);
    m.def("corpus_stats",
          [](const std::vector<Chunk>& chunks) {
              const ChunkStats s = corpus_stats(chunks);
              py::dict d;
              d["total_chunks"] = s.total_chunks;
              d["total_duration_hours"] = s.total_duration_hours;
              d["mean_duration_s"] = s.mean_duration_s;
              d["min_duration_s"] = s.min_duration_s;
              return d;
          },
          py::arg("chunks"));

    // Text filters
    m.def("nfc", &nfc, py::arg("text"));
    m.def("normalize_tokens", &normalize_tokens, py::arg("text"));
    m.def("collapse_repetitions",
          [](std::vector<std::string> tokens, int max_n, int min_repeats) {
              return collapse_repetitions(std::move(tokens), {max_n, min_repeats});
          },
          py::arg("tokens"), py::arg("max_n") = 5, py::arg("min_repeats") = 4);
    m.def("apply_blacklist",
          [](std::string_view text, const std::vector<std::string>& phrases) {
              return apply_blacklist(text, phrases);
          },
          py::arg("text"), py::arg("phrases"));

    // Diarization post-processing
    m.def("exclusive_assign",
          [](const PySegments& d) { return diarization_out(exclusive_assign(diarization_in(d))); },
          py::arg("segments"));
    m.def("fill_intra_speaker_gaps",
          [](const PySegments& d, double min_duration_off) {
              return diarization_out(
                  fill_intra_speaker_gaps(diarization_in(d), ms_from_seconds(min_duration_off)));
          },
          py::arg("segments"), py::arg("min_duration_off") = 0.05);
    m.def("adaptive_merge",
          [](const PySegments& d, double min_gap, double max_gap, double anchor_gap,
             double density_window) {
              const MergeConfig cfg{ms_from_seconds(min_gap), ms_from_seconds(max_gap),
                                    ms_from_seconds(anchor_gap), ms_from_seconds(density_window)};
              return diarization_out(adaptive_merge(diarization_in(d), cfg));
          },
          py::arg("segments"), py::arg("min_gap") = 0.15, py::arg("max_gap") = 0.8,
          py::arg("anchor_gap") = 0.4, py::arg("density_window") = 10.0);
    m.def("purge_transients",
          [](const PySegments& d, double min_dur) {
              return diarization_out(purge_transients(diarization_in(d), ms_from_seconds(min_dur)));
          },
          py::arg("segments"), py::arg("min_dur") = 0.15);
    m.def("intersect_with_vad",
          [](const PySegments& d, const PyIntervals& vad, double min_dur) {
              return diarization_out(intersect_with_vad(diarization_in(d), timeline_in(vad),
                                                        ms_from_seconds(min_dur)));
          },
          py::arg("segments"), py::arg("vad"), py::arg("min_dur") = 0.15);
    m.def("agglomerative_cluster",
          [](const std::vector<std::vector<double>>& vectors, double threshold) {
              std::vector<Embedding> embs;
              embs.reserve(vectors.size());
              for (std::size_t i = 0; i < vectors.size(); ++i) {
                  embs.push_back({vectors[i], static_cast<std::int64_t>(i)});
              }
              return agglomerative_cluster(embs, threshold);
          },
          py::arg("vectors"), py::arg("threshold") = 0.58);

    // Metrics
    py::class_<WerBreakdown>(m, "WerBreakdown")
        .def_readonly("substitutions", &WerBreakdown::substitutions)
        .def_readonly("deletions", &WerBreakdown::deletions)
        .def_readonly("insertions", &WerBreakdown::insertions)
        .def_readonly("ref_len", &WerBreakdown::ref_len)
        .def_property_readonly("wer", &WerBreakdown::wer)
        .def("__repr__", [](const WerBreakdown& w) {
            return "WerBreakdown(wer=" + std::to_string(w.wer()) +
                   ", S=" + std::to_string(w.substitutions) + ", D=" + std::to_string(w.deletions) +
                   ", I=" + std::to_string(w.insertions) + ", N=" + std::to_string(w.ref_len) + ")";
        });
    py::class_<DerBreakdown>(m, "DerBreakdown")
        .def_property_readonly("missed",
                               [](const DerBreakdown& d) { return seconds_from_ms(d.missed); })
        .def_property_readonly("false_alarm",
                               [](const DerBreakdown& d) { return seconds_from_ms(d.false_alarm); })
        .def_property_readonly("confusion",
                               [](const DerBreakdown& d) { return seconds_from_ms(d.confusion); })
        .def_property_readonly("ref_speech",
                               [](const DerBreakdown& d) { return seconds_from_ms(d.ref_speech); })
        .def_readonly("mapping", &DerBreakdown::mapping)
        .def_property_readonly("der", &DerBreakdown::der)
        .def("__repr__", [](const DerBreakdown& d) {
            return "DerBreakdown(der=" + std::to_string(d.der()) + ", miss=" +
                   seconds_str(d.missed) + ", fa=" + seconds_str(d.false_alarm) +
                   ", conf=" + seconds_str(d.confusion) + ")";
        });
    m.def("wer",
          [](const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
              return wer(ref, hyp);
          },
          py::arg("ref_tokens"), py::arg("hyp_tokens"));
    m.def("der",
          [](const PySegments& ref, const PySegments& hyp, double collar) {
              return der(diarization_in(ref), diarization_in(hyp), ms_from_seconds(collar));
          },
          py::arg("ref"), py::arg("hyp"), py::arg("collar") = 0.0);
    m.def("optimal_speaker_mapping",
          [](const PySegments& ref, const PySegments& hyp) {
              return optimal_speaker_mapping(diarization_in(ref), diarization_in(hyp));
          },
          py::arg("ref"), py::arg("hyp"));

    // RTTM interchange
    m.def("write_rttm",
          [](const PySegments& d, const std::string& file_id) {
              return write_rttm(diarization_in(d), file_id);
          },
          py::arg("segments"), py::arg("file_id"));
    m.def("read_rttm",
          [](std::string_view text) {
              std::map<std::string, PySegments> out;
              for (const auto& [file_id, d] : read_rttm(text)) {
                  out[file_id] = diarization_out(d);
              }
              return out;
          },
          py::arg("text"));

    // Simulation harness
    m.def("simulate",
          [](std::uint64_t seed, int n_speakers, double duration, double sub_rate, double del_rate,
             double ins_rate, double timestamp_jitter, double boundary_jitter,
             double spurious_rate, std::size_t vocab_size, double prob_noise) {
              SimConfig cfg;
              cfg.seed = seed;
              cfg.n_speakers = n_speakers;
              cfg.total_duration = ms_from_seconds(duration);
              cfg.sub_rate = sub_rate;
              cfg.del_rate = del_rate;
              cfg.ins_rate = ins_rate;
              cfg.timestamp_jitter = ms_from_seconds(timestamp_jitter);
              cfg.boundary_jitter = ms_from_seconds(boundary_jitter);
              cfg.spurious_rate = spurious_rate;
              cfg.vocab_size = vocab_size;
              cfg.prob_noise = prob_noise;
              const Truth truth = generate_truth(cfg);
              const Perturbed hyp = perturb(truth, cfg);
              py::dict d;
              PyWords words;
              for (const auto& w : truth.words) {
                  words.emplace_back(w.text, seconds_from_ms(w.span.start),
                                     seconds_from_ms(w.span.end));
              }
              d["words"] = words;
              d["segments"] = diarization_out(truth.diarization);
              d["probs"] = truth.probs.probs;
              d["frame_rate"] = truth.probs.frame_rate;
              PyWords hyp_words;
              for (const auto& w : hyp.hyp_words) {
                  hyp_words.emplace_back(w.text, seconds_from_ms(w.span.start),
                                         seconds_from_ms(w.span.end));
              }
              d["hyp_words"] = hyp_words;
              d["hyp_segments"] = diarization_out(hyp.hyp_diarization);
              d["substitutions"] = hyp.substitutions;
              d["deletions"] = hyp.deletions;
              d["insertions"] = hyp.insertions;
              return d;
          },
          py::arg("seed") = 0, py::arg("n_speakers") = 2, py::arg("duration") = 60.0,
          py::arg("sub_rate") = 0.0, py::arg("del_rate") = 0.0, py::arg("ins_rate") = 0.0,
          py::arg("timestamp_jitter") = 0.0, py::arg("boundary_jitter") = 0.0,
          py::arg("spurious_rate") = 0.0, py::arg("vocab_size") = 0, py::arg("prob_noise") = 0.0);

    // Pipeline defaults, mirroring the CLI config keys.
    m.def("default_config", [] {
        const PipelineConfig cfg;
        py::dict d;
        d["onset"] = cfg.onset;
        d["offset"] = cfg.offset;
        d["min_speech"] = seconds_from_ms(cfg.min_speech);
        d["min_silence"] = seconds_from_ms(cfg.min_silence);
        d["max_window"] = seconds_from_ms(cfg.max_window);
        d["window_overlap"] = seconds_from_ms(cfg.window_overlap);
        d["chunk_max"] = seconds_from_ms(cfg.chunk_max);
        d["chunk_min"] = seconds_from_ms(cfg.chunk_min);
        d["rep_max_n"] = cfg.rep_max_n;
        d["rep_min_repeats"] = cfg.rep_min_repeats;
        d["cluster_threshold"] = cfg.cluster_threshold;
        d["min_duration_off"] = seconds_from_ms(cfg.min_duration_off);
        d["merge_min_gap"] = seconds_from_ms(cfg.merge_min_gap);
        d["merge_anchor_gap"] = seconds_from_ms(cfg.merge_anchor_gap);
        d["merge_max_gap"] = seconds_from_ms(cfg.merge_max_gap);
        d["density_window"] = seconds_from_ms(cfg.density_window);
        d["transient"] = seconds_from_ms(cfg.transient);
        d["collar"] = seconds_from_ms(cfg.collar);
        d["split_seed"] = cfg.split_seed;
        d["train_frac"] = cfg.train_frac;
        return d;
    });
}
