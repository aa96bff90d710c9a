#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "chronoalign/time.hpp"

namespace chronoalign {

struct SpeakerSegment {
    Interval span;
    std::string speaker;

    auto operator<=>(const SpeakerSegment& other) const {
        return std::tie(span.start, span.end, speaker) <=>
               std::tie(other.span.start, other.span.end, other.speaker);
    }
    bool operator==(const SpeakerSegment&) const = default;
};

// Speaker-labeled intervals, sorted by (start, end, speaker). Input
// diarizations may overlap; post-processing outputs are exclusive.
class Diarization {
  public:
    Diarization() = default;
    // Sorts and drops zero-length segments. Throws InputError on negative
    // times, start > end, or empty speaker labels.
    explicit Diarization(std::vector<SpeakerSegment> segments);

    const std::vector<SpeakerSegment>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }
    std::size_t size() const { return segments_.size(); }

    // True when no two segments overlap (touching is allowed).
    bool exclusive() const { return exclusive_; }

    // Union of all spans.
    Timeline speech() const;
    Timeline speaker_timeline(const std::string& speaker) const;
    std::vector<std::string> speakers() const;  // sorted, unique

    bool operator==(const Diarization&) const = default;

  private:
    std::vector<SpeakerSegment> segments_;
    bool exclusive_ = true;
};

// Resolve overlaps by granting each contested region to the active segment
// with the earliest start (ties: longer segment, then lexicographically
// smaller speaker); later segments keep their uncovered remainder. The
// span union is preserved exactly and the result is exclusive.
Diarization exclusive_assign(const Diarization& d);

// Merge consecutive same-speaker segments separated by a gap shorter than
// min_duration_off, unless another speaker's segment sits in the gap.
// Requires an exclusive input.
Diarization fill_intra_speaker_gaps(const Diarization& d, Millis min_duration_off);

// Adaptive merge bounds: the allowed gap scales linearly with local
// acoustic density, anchored at anchor_gap for half-dense audio and clamped
// to [min_gap, max_gap].
struct MergeConfig {
    Millis min_gap = 150;
    Millis max_gap = 800;
    Millis anchor_gap = 400;
    Millis density_window = 10'000;

    void validate() const;
};

// For each same-speaker adjacent pair with gap g, compute the speech
// density rho of the pre-merge timeline inside a density_window centered on
// the gap midpoint and merge iff g <= clamp(anchor + (0.5 - rho) * 0.8s,
// min_gap, max_gap) and no other speaker occupies the gap. Left-to-right
// single pass. Requires an exclusive input.
Diarization adaptive_merge(const Diarization& d, const MergeConfig& cfg);

// Drop segments shorter than min_dur (exact min_dur is retained).
Diarization purge_transients(const Diarization& d, Millis min_dur);

// Clip every segment to the VAD timeline (a segment may split into several
// pieces) and re-purge pieces shorter than min_dur.
Diarization intersect_with_vad(const Diarization& d, const Timeline& vad, Millis min_dur);

// A speaker embedding attached to a segment index.
struct Embedding {
    std::vector<double> vector;
    std::int64_t segment_ref = -1;
};

// Threshold-stopped agglomerative clustering under cosine distance between
// centroids of unit-normalized vectors. Returns one label per input, dense
// from 0 in first-appearance order. Throws InputError on zero vectors,
// non-finite entries, or mismatched dimensions.
std::vector<int> agglomerative_cluster(std::span<const Embedding> embeddings, double threshold);

}  // namespace chronoalign
