#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "chronoalign/diarization.hpp"
#include "chronoalign/text.hpp"
#include "chronoalign/time.hpp"
#include "chronoalign/vad.hpp"

namespace chronoalign {

// Every tunable of the pipeline with its shipped default. Durations are
// stored on the millisecond clock; config files and flags state them in
// seconds.
struct PipelineConfig {
    // VAD hysteresis
    double onset = 0.4;
    double offset = 0.25;
    Millis min_speech = 0;
    Millis min_silence = 0;

    // Inference windowing
    Millis max_window = 30'000;
    Millis window_overlap = 1'000;

    // Training chunk bounds
    Millis chunk_max = 28'000;
    Millis chunk_min = 20'000;

    // Transcript filters
    int rep_max_n = 5;
    int rep_min_repeats = 4;

    // Diarization post-processing
    double cluster_threshold = 0.58;
    Millis min_duration_off = 50;
    Millis merge_min_gap = 150;
    Millis merge_anchor_gap = 400;
    Millis merge_max_gap = 800;
    Millis density_window = 10'000;
    Millis transient = 150;

    // Scoring
    Millis collar = 0;

    // Train/validation split
    std::uint64_t split_seed = 42;
    double train_frac = 0.9;

    VadConfig vad() const { return {onset, offset, min_speech, min_silence}; }
    MergeConfig merge() const {
        return {merge_min_gap, merge_max_gap, merge_anchor_gap, density_window};
    }
    RepetitionConfig repetition() const { return {rep_max_n, rep_min_repeats}; }

    // Re-validates all ranges through the owning modules.
    void validate() const;

    // Assign one named key from its config-file string form. Unknown keys
    // are errors.
    void set(const std::string& key, const std::string& value);
    // Numeric assignment used by the sweep harness (seconds for durations).
    void set_numeric(const std::string& key, double value);

    // Deterministic key=value rendering; doubles as config-hash input and
    // config-file output.
    std::string canonical_str() const;
};

// Parse a flat key = value config file ('#' comments, blank lines allowed)
// on top of `base`. Unknown keys raise ConfigError.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});

}  // namespace chronoalign
