#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chronoalign/diarization.hpp"
#include "chronoalign/time.hpp"

namespace chronoalign {

// Minimal edit-script decomposition of a hypothesis against a reference.
struct WerBreakdown {
    std::size_t substitutions = 0;
    std::size_t deletions = 0;
    std::size_t insertions = 0;
    std::size_t ref_len = 0;

    std::size_t edits() const { return substitutions + deletions + insertions; }
    double wer() const { return static_cast<double>(edits()) / static_cast<double>(ref_len); }
};

// Unit-cost Levenshtein with a substitution-preferring backtrace.
// Throws InputError on an empty reference.
WerBreakdown wer(std::span<const std::string> ref_tokens, std::span<const std::string> hyp_tokens);

// Frame-level DER decomposition in the NIST-RT convention: the scoring
// region excludes +/-collar around every reference segment boundary,
// overlapped reference speech counts multiply in the denominator, and hyp
// speakers are mapped one-to-one onto reference speakers.
struct DerBreakdown {
    Millis missed = 0;
    Millis false_alarm = 0;
    Millis confusion = 0;
    Millis ref_speech = 0;
    std::map<std::string, std::string> mapping;  // hyp speaker -> ref speaker

    Millis error_total() const { return missed + false_alarm + confusion; }
    double der() const {
        return static_cast<double>(error_total()) / static_cast<double>(ref_speech);
    }
};

// Throws InputError when the scored reference speech is empty.
DerBreakdown der(const Diarization& ref, const Diarization& hyp, Millis collar);

// One-to-one partial mapping maximizing total overlapped duration; among
// optima, prefers pairs in (ref label, hyp label) order. Pairs with zero
// overlap stay unmapped.
std::map<std::string, std::string> optimal_speaker_mapping(const Diarization& ref,
                                                           const Diarization& hyp);

struct FileRate {
    std::string id;
    double rate = 0.0;
    double weight = 1.0;  // ref length or ref speech duration
};

// Corpus aggregation: unweighted mean of per-file rates by default, or a
// weight-proportional mean. Throws InputError on an empty list.
double aggregate(std::span<const FileRate> per_file, bool weighted = false);

// One evaluated point of a parameter grid.
struct SweepRow {
    std::map<std::string, double> params;
    double score = 0.0;
    bool ok = false;
    std::string error;
    bool best = false;
};

// Evaluate the Cartesian product of a parameter grid. Single-point
// failures are recorded per row and the sweep continues. Rows come back
// sorted by (score, params), failed rows last, best row flagged.
std::vector<SweepRow> sweep_grid(
    const std::map<std::string, std::vector<double>>& grid,
    const std::function<double(const std::map<std::string, double>&)>& evaluate);

}  // namespace chronoalign
