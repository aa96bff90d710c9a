#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chronoalign {

// Controls the n-gram repetition detector aimed at looping ASR output.
struct RepetitionConfig {
    int max_n = 5;        // largest n-gram checked
    int min_repeats = 4;  // consecutive occurrences that trigger a collapse

    void validate() const;
};

// Canonical composition (NFC) of a UTF-8 string. Throws InputError on
// invalid UTF-8.
std::string nfc(std::string_view utf8);

// NFC-normalize, split on Unicode whitespace, drop empty tokens.
std::vector<std::string> normalize_tokens(std::string_view text);

// Collapse runs of >= min_repeats consecutive identical n-grams to a single
// occurrence, longest n first, rescanning until a fixed point. Never grows
// the sequence.
std::vector<std::string> collapse_repetitions(std::vector<std::string> tokens,
                                              const RepetitionConfig& cfg = {});

// Remove every phrase (ASCII-case-insensitive substring match) repeatedly
// until none remains, then re-collapse whitespace runs to single spaces.
std::string apply_blacklist(std::string_view text, std::span<const std::string> phrases);

}  // namespace chronoalign
