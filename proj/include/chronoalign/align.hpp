#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chronoalign/time.hpp"

namespace chronoalign {

// A hypothesis word with its decoded time span.
struct TimedWord {
    std::string text;
    Interval span;

    auto operator<=>(const TimedWord&) const = default;
};

// How a ground-truth word obtained its time span.
enum class Anchor {
    direct,        // hypothesis transcribed the word correctly
    borrowed,      // span taken from the mis-transcribed hypothesis word
    interpolated,  // estimated from neighboring anchors
};

const char* anchor_name(Anchor a);
std::optional<Anchor> anchor_from_name(std::string_view name);

// A ground-truth word carrying a time anchor.
struct AnchoredWord {
    std::string text;
    Interval span;
    Anchor anchor = Anchor::direct;

    auto operator<=>(const AnchoredWord&) const = default;
};

// A ground-truth word whose span may still be pending interpolation.
struct ProvisionalWord {
    std::string text;
    std::optional<Interval> span;  // nullopt: to be filled by interpolate_gaps
    Anchor anchor = Anchor::interpolated;
};

enum class MatchKind { Equal, Replace, Delete, Insert };

// One opcode of the sequence diff. Ranges partition both sequences in
// order; Equal ops have equal-length, token-identical ranges.
struct MatchOp {
    MatchKind kind;
    std::size_t hyp_begin = 0;
    std::size_t hyp_end = 0;
    std::size_t ref_begin = 0;
    std::size_t ref_end = 0;

    bool operator==(const MatchOp&) const = default;
};

// Ratcliff/Obershelp-style diff: recursively take the longest contiguous
// matching block (earliest in hyp, then in ref, on ties), classify the
// non-matching flanks. No junk heuristics.
std::vector<MatchOp> diff_match(std::span<const std::string> hyp_tokens,
                                std::span<const std::string> ref_tokens);

// Fill pending spans: an interior run of k placeholders splits the gap
// between its bounding anchors into k equal sub-intervals; leading/trailing
// runs extrapolate by the mean anchored-word duration, clamped at 0.
// Throws InputError when a non-empty sequence has no anchor at all.
std::vector<AnchoredWord> interpolate_gaps(std::vector<ProvisionalWord> words);

// Transfer hypothesis timestamps onto the ground-truth tokens: diff the two
// sequences (tokens compared NFC-normalized), anchor equal words directly,
// borrow spans for replaced words (paired positionally), interpolate words
// the hypothesis missed, discard hypothesis words with no counterpart.
// Output tokens always equal ref_tokens.
std::vector<AnchoredWord> transfer_anchors(std::span<const TimedWord> hyp,
                                           std::span<const std::string> ref_tokens);

}  // namespace chronoalign
