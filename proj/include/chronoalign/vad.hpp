#pragma once

#include <vector>

#include "chronoalign/time.hpp"

namespace chronoalign {

// A stream of per-frame speech probabilities. Frame i spans
// [origin + i/frame_rate, origin + (i+1)/frame_rate).
struct FrameProbs {
    double frame_rate = 100.0;  // frames per second, > 0
    std::vector<double> probs;  // each in [0, 1]
    Millis origin = 0;

    // Quantized start time of frame i (frame count is valid as well, giving
    // the exclusive end of the stream).
    Millis frame_start(std::size_t i) const;
    void validate() const;
};

// Asymmetric hysteresis thresholds: enter speech at p >= onset, leave at
// p < offset. Segments shorter than min_speech are dropped and silences
// shorter than min_silence bridged.
struct VadConfig {
    double onset = 0.4;
    double offset = 0.25;
    Millis min_speech = 0;
    Millis min_silence = 0;

    void validate() const;
};

Timeline hysteresis_segment(const FrameProbs& frames, const VadConfig& cfg);

// Group consecutive speech regions into transcription windows whose span
// never exceeds max_len; a single region longer than max_len is split into
// max_len windows stepping by (max_len - overlap), the final window ending
// at the region end. Windows may overlap, so the result is a plain interval
// list covering the speech timeline.
std::vector<Interval> merge_windows(const Timeline& speech, Millis max_len, Millis overlap);

}  // namespace chronoalign
