#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chronoalign/align.hpp"
#include "chronoalign/diarization.hpp"
#include "chronoalign/time.hpp"
#include "chronoalign/vad.hpp"

namespace chronoalign {

// Deterministic random helpers on top of the standard-specified mt19937_64
// stream, so identical seeds give identical corpora on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n);  // uniform in [0, n), n >= 1
    double unit();                         // uniform in [0, 1)
    Millis uniform_ms(Millis lo, Millis hi);  // uniform inclusive
    bool chance(double p) { return unit() < p; }

  private:
    std::mt19937_64 engine_;
};

struct SimConfig {
    std::uint64_t seed = 0;
    int n_speakers = 2;
    Millis total_duration = 60'000;
    double frame_rate = 100.0;

    // Word/gap/pause draws are uniform in mean +/- jitter, snapped to the
    // frame grid so VAD closure is exact.
    Millis word_dur_mean = 300;
    Millis word_dur_jitter = 150;
    Millis gap_mean = 80;
    Millis gap_jitter = 80;
    Millis pause_mean = 700;
    Millis pause_jitter = 500;
    int words_per_turn_min = 3;
    int words_per_turn_max = 12;
    // 0: globally unique sequential tokens; > 0: sample from a fixed vocab.
    std::size_t vocab_size = 0;

    // Probability flutter amplitude. Kept below the hysteresis offset so
    // noisy streams segment identically to clean ones.
    double prob_noise = 0.0;

    // Perturbation rates for hypothesis generation.
    double sub_rate = 0.0;
    double del_rate = 0.0;
    double ins_rate = 0.0;
    Millis timestamp_jitter = 0;
    Millis boundary_jitter = 0;
    double spurious_rate = 0.0;

    void validate() const;
};

// A self-consistent synthetic recording: words lie inside their speaker's
// segments, and frame probabilities reproduce the segment timeline exactly
// under the default hysteresis thresholds.
struct Truth {
    Diarization diarization;
    std::vector<TimedWord> words;
    FrameProbs probs;

    Timeline speech() const { return diarization.speech(); }
    std::vector<std::string> tokens() const;
};

Truth generate_truth(const SimConfig& cfg);

// A corrupted hypothesis together with the exact edit script that produced
// it, so metric tests can assert recorded expectations instead of
// re-derived ones. Insertions are only placed where they cannot coalesce
// with a deletion into a cheaper substitution, which keeps the minimal edit
// distance equal to substitutions + deletions + insertions.
struct Perturbed {
    std::vector<TimedWord> hyp_words;
    Diarization hyp_diarization;

    std::size_t substitutions = 0;
    std::size_t deletions = 0;
    std::size_t insertions = 0;
    std::size_t boundaries_moved = 0;
    Millis max_boundary_shift = 0;
    Millis spurious_duration = 0;
};

Perturbed perturb(const Truth& truth, const SimConfig& cfg);

}  // namespace chronoalign
