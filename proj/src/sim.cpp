#include "chronoalign/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "chronoalign/error.hpp"

namespace chronoalign {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) {
        throw InputError("Rng::below requires n >= 1");
    }
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t v = engine_();
        if (rem == 0 || v <= max - rem) {
            return v % n;
        }
    }
}

double Rng::unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Millis Rng::uniform_ms(Millis lo, Millis hi) {
    if (lo > hi) {
        std::swap(lo, hi);
    }
    return lo + static_cast<Millis>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

void SimConfig::validate() const {
    if (n_speakers < 1) {
        throw ConfigError("sim n_speakers must be >= 1");
    }
    if (total_duration <= 0) {
        throw ConfigError("sim total_duration must be positive");
    }
    if (!(frame_rate > 0)) {
        throw ConfigError("sim frame_rate must be positive");
    }
    if (word_dur_mean <= 0 || word_dur_jitter < 0 || gap_mean < 0 || gap_jitter < 0 ||
        pause_mean <= 0 || pause_jitter < 0) {
        throw ConfigError("sim durations must be positive (jitters non-negative)");
    }
    if (words_per_turn_min < 1 || words_per_turn_max < words_per_turn_min) {
        throw ConfigError("sim words_per_turn range invalid");
    }
    if (!(prob_noise >= 0.0 && prob_noise < 0.25)) {
        throw ConfigError("sim prob_noise must lie in [0, 0.25) to preserve VAD closure");
    }
    for (double rate : {sub_rate, del_rate, ins_rate, spurious_rate}) {
        if (!(rate >= 0.0 && rate <= 1.0)) {
            throw ConfigError("sim perturbation rates must lie in [0, 1]");
        }
    }
    if (sub_rate + del_rate > 1.0) {
        throw ConfigError("sim sub_rate + del_rate must not exceed 1");
    }
    if (timestamp_jitter < 0 || boundary_jitter < 0) {
        throw ConfigError("sim jitters must be non-negative");
    }
}

std::vector<std::string> Truth::tokens() const {
    std::vector<std::string> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        out.push_back(w.text);
    }
    return out;
}

Truth generate_truth(const SimConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    FrameProbs probs;
    probs.frame_rate = cfg.frame_rate;
    auto frame_at = [&](std::size_t i) { return probs.frame_start(i); };
    auto to_frames = [&](Millis ms) {
        return static_cast<std::size_t>(std::max<Millis>(
            0, static_cast<Millis>(std::llround(static_cast<double>(ms) * cfg.frame_rate / 1000.0))));
    };

    std::vector<std::string> labels;
    for (int s = 0; s < cfg.n_speakers; ++s) {
        labels.push_back("spk" + std::to_string(s));
    }

    std::vector<SpeakerSegment> segments;
    std::vector<TimedWord> words;
    std::size_t token_counter = 0;
    auto next_token = [&] {
        const std::size_t id =
            cfg.vocab_size == 0 ? token_counter : rng.below(cfg.vocab_size);
        ++token_counter;
        return "w" + std::to_string(id);
    };

    std::size_t fi = 0;
    while (frame_at(fi) < cfg.total_duration) {
        const std::string& speaker = labels[rng.below(static_cast<std::uint64_t>(cfg.n_speakers))];
        const int turn_words =
            cfg.words_per_turn_min +
            static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.words_per_turn_max -
                                                                  cfg.words_per_turn_min + 1)));
        const std::size_t seg_start_frame = fi;
        std::size_t cur = fi;
        std::size_t last_end_frame = fi;
        std::size_t emitted = 0;
        for (int w = 0; w < turn_words; ++w) {
            const std::size_t dur_f = std::max<std::size_t>(
                1, to_frames(rng.uniform_ms(cfg.word_dur_mean - cfg.word_dur_jitter,
                                            cfg.word_dur_mean + cfg.word_dur_jitter)));
            if (frame_at(cur + dur_f) > cfg.total_duration) {
                break;
            }
            words.push_back({next_token(), {frame_at(cur), frame_at(cur + dur_f)}});
            cur += dur_f;
            last_end_frame = cur;
            ++emitted;
            if (w + 1 < turn_words) {
                cur += to_frames(
                    rng.uniform_ms(cfg.gap_mean - cfg.gap_jitter, cfg.gap_mean + cfg.gap_jitter));
            }
        }
        if (emitted == 0) {
            break;  // no room left for even one word
        }
        segments.push_back({{frame_at(seg_start_frame), frame_at(last_end_frame)}, speaker});
        const std::size_t pause_f = std::max<std::size_t>(
            1, to_frames(rng.uniform_ms(cfg.pause_mean - cfg.pause_jitter,
                                        cfg.pause_mean + cfg.pause_jitter)));
        fi = last_end_frame + pause_f;
    }

    // Probabilities: high inside segments, low outside, with flutter small
    // enough that hysteresis reproduces the segment timeline exactly.
    std::size_t total_frames = 0;
    while (frame_at(total_frames) < cfg.total_duration) {
        ++total_frames;
    }
    const Timeline speech = Diarization(segments).speech();
    probs.probs.resize(total_frames);
    for (std::size_t i = 0; i < total_frames; ++i) {
        const bool in_speech = speech.contains(frame_at(i));
        const double flutter = cfg.prob_noise * rng.unit();
        probs.probs[i] = in_speech ? 1.0 - flutter : flutter;
    }

    Truth truth;
    truth.diarization = Diarization(std::move(segments));
    truth.words = std::move(words);
    truth.probs = std::move(probs);
    return truth;
}

namespace {

enum class WordAction { keep, substitute, drop };

}  // namespace

Perturbed perturb(const Truth& truth, const SimConfig& cfg) {
    cfg.validate();
    // Separate stream from generate_truth so truth and hypothesis can be
    // produced independently from one config.
    Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    Perturbed out;

    const std::size_t n = truth.words.size();
    std::vector<WordAction> actions(n, WordAction::keep);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = rng.unit();
        if (r < cfg.sub_rate) {
            actions[i] = WordAction::substitute;
        } else if (r < cfg.sub_rate + cfg.del_rate) {
            actions[i] = WordAction::drop;
        }
    }

    // An insertion may not share a kept-token-free flank with a deletion,
    // otherwise the minimal edit script would pair them as one substitution
    // and the recorded counts would overshoot the true distance.
    std::vector<char> left_blocked(n + 1, 0);   // deletion somewhere left of
    std::vector<char> right_blocked(n + 1, 0);  // gap g before a kept token
    {
        bool has_del = false;
        for (std::size_t g = 0; g <= n; ++g) {
            left_blocked[g] = has_del ? 1 : 0;
            if (g < n) {
                if (actions[g] == WordAction::drop) {
                    has_del = true;
                } else if (actions[g] == WordAction::keep) {
                    has_del = false;
                }
            }
        }
        has_del = false;
        for (std::size_t g = n + 1; g-- > 0;) {
            right_blocked[g] = has_del ? 1 : 0;
            if (g > 0) {
                if (actions[g - 1] == WordAction::drop) {
                    has_del = true;
                } else if (actions[g - 1] == WordAction::keep) {
                    has_del = false;
                }
            }
        }
    }

    std::vector<TimedWord> hyp;
    std::size_t unique_id = 0;
    auto maybe_insert = [&](std::size_t gap) {
        if (cfg.ins_rate > 0 && !left_blocked[gap] && !right_blocked[gap] &&
            rng.chance(cfg.ins_rate)) {
            // A hallucinated word gets a zero-length span at the gap point;
            // timestamps of inserted words carry no meaning.
            const Millis at = gap < n ? truth.words[gap].span.start
                                      : (n > 0 ? truth.words[n - 1].span.end : 0);
            hyp.push_back({"hal" + std::to_string(unique_id++), {at, at}});
            ++out.insertions;
        }
    };

    for (std::size_t i = 0; i < n; ++i) {
        maybe_insert(i);
        switch (actions[i]) {
            case WordAction::keep:
                hyp.push_back(truth.words[i]);
                break;
            case WordAction::substitute:
                hyp.push_back({"sub" + std::to_string(unique_id++), truth.words[i].span});
                ++out.substitutions;
                break;
            case WordAction::drop:
                ++out.deletions;
                break;
        }
    }
    maybe_insert(n);

    if (cfg.timestamp_jitter > 0) {
        Millis prev_start = 0;
        for (auto& w : hyp) {
            const Millis delta = rng.uniform_ms(-cfg.timestamp_jitter, cfg.timestamp_jitter);
            const Millis dur = w.span.duration();
            const Millis start = std::max({static_cast<Millis>(0), w.span.start + delta, prev_start});
            w.span = {start, start + dur};
            prev_start = start;
        }
    }
    out.hyp_words = std::move(hyp);

    // Diarization: jitter each boundary independently, clamped to keep the
    // segments exclusive and non-degenerate; every boundary moves at most
    // boundary_jitter.
    std::vector<SpeakerSegment> hyp_segs;
    Millis prev_end = 0;
    for (const auto& s : truth.diarization.segments()) {
        SpeakerSegment seg = s;
        if (cfg.boundary_jitter > 0) {
            const Millis ds = rng.uniform_ms(-cfg.boundary_jitter, cfg.boundary_jitter);
            const Millis de = rng.uniform_ms(-cfg.boundary_jitter, cfg.boundary_jitter);
            seg.span.start = std::max({static_cast<Millis>(0), s.span.start + ds, prev_end});
            seg.span.end = std::max(seg.span.start + 1, s.span.end + de);
            out.boundaries_moved += 2;
            out.max_boundary_shift =
                std::max({out.max_boundary_shift, std::abs(seg.span.start - s.span.start),
                          std::abs(seg.span.end - s.span.end)});
        }
        prev_end = seg.span.end;
        hyp_segs.push_back(seg);
    }
    std::size_t spur_id = 0;
    if (cfg.spurious_rate > 0) {
        for (const auto& s : truth.diarization.segments()) {
            if (rng.chance(cfg.spurious_rate)) {
                const Millis dur = rng.uniform_ms(50, 300);
                hyp_segs.push_back({{s.span.end, s.span.end + dur},
                                    "spur" + std::to_string(spur_id++)});
                out.spurious_duration += dur;
            }
        }
    }
    out.hyp_diarization = Diarization(std::move(hyp_segs));
    return out;
}

}  // namespace chronoalign
