#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chronoalign {

// Every timestamp in this library lives on a non-negative integer
// millisecond clock. Seconds enter and leave only at the API edges,
// quantized round-half-up to 1 ms, so set algebra is exact and
// rendering/parsing is a fixed point.
using Millis = std::int64_t;

// Quantize seconds to the millisecond clock (round half up).
// Throws InputError for non-finite or negative values.
Millis ms_from_seconds(double seconds);

double seconds_from_ms(Millis ms);

// Fixed 3-decimal rendering, e.g. 1234 -> "1.234".
std::string seconds_str(Millis ms);

// Strict parse of a non-negative decimal seconds literal. Extra fractional
// digits are quantized round-half-up to 1 ms. Throws ParseError on anything
// that is not a plain decimal number.
Millis parse_seconds_str(std::string_view text);

// A closed-start time span on the millisecond clock. Zero-length intervals
// are representable but contribute nothing to set algebra; membership is
// half-open [start, end).
struct Interval {
    Millis start = 0;
    Millis end = 0;

    Millis duration() const { return end - start; }
    bool empty() const { return end <= start; }
    bool contains(Millis t) const { return start <= t && t < end; }

    auto operator<=>(const Interval&) const = default;
};

// Canonical interval set: sorted by start, pairwise disjoint, touching
// intervals coalesced, no empty members. Equality is structural.
class Timeline {
  public:
    Timeline() = default;
    // Normalizes arbitrary input: drops empty intervals, sorts, coalesces
    // overlapping and touching spans. Throws InputError if any interval has
    // start > end or start < 0.
    explicit Timeline(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return intervals_; }
    bool empty() const { return intervals_.empty(); }
    std::size_t size() const { return intervals_.size(); }

    Millis duration() const;
    bool contains(Millis t) const;
    // True when [iv.start, iv.end) lies entirely within this timeline.
    bool covers(const Interval& iv) const;

    bool operator==(const Timeline&) const = default;

  private:
    std::vector<Interval> intervals_;
};

Timeline timeline_union(const Timeline& a, const Timeline& b);
Timeline timeline_intersect(const Timeline& a, const Timeline& b);
// Set difference a \ b.
Timeline timeline_subtract(const Timeline& a, const Timeline& b);
Millis timeline_duration(const Timeline& t);

// Piecewise-linear map between positions in a concatenation of the speech
// regions and positions in the original audio. Strictly increasing on its
// domain; to_original/to_concat are mutual inverses on valid points.
class TimeMap {
  public:
    explicit TimeMap(Timeline speech);

    // Total length of the concatenated speech (exclusive domain end).
    Millis total_duration() const { return total_; }
    const Timeline& source() const { return speech_; }

    // Concatenated time -> original-audio time. Domain is [0, total).
    // Throws InputError outside the domain.
    Millis to_original(Millis t_concat) const;

    // Original-audio time -> concatenated time. Domain is the speech
    // timeline (half-open membership). Throws InputError outside it.
    Millis to_concat(Millis t_original) const;

  private:
    Timeline speech_;
    std::vector<Millis> offsets_;  // concatenated start of each interval
    Millis total_ = 0;
};

}  // namespace chronoalign
