#include "chronoalign/align.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "chronoalign/error.hpp"
#include "chronoalign/text.hpp"

namespace chronoalign {

const char* anchor_name(Anchor a) {
    switch (a) {
        case Anchor::direct:
            return "direct";
        case Anchor::borrowed:
            return "borrowed";
        case Anchor::interpolated:
            return "interpolated";
    }
    return "?";
}

std::optional<Anchor> anchor_from_name(std::string_view name) {
    if (name == "direct") {
        return Anchor::direct;
    }
    if (name == "borrowed") {
        return Anchor::borrowed;
    }
    if (name == "interpolated") {
        return Anchor::interpolated;
    }
    return std::nullopt;
}

namespace {

struct Block {
    std::size_t hyp_pos;
    std::size_t ref_pos;
    std::size_t len;
};

// Longest contiguous matching block between hyp[hlo,hhi) and ref[rlo,rhi),
// earliest in hyp then in ref on ties. Dense DP over ref positions with a
// sparse reset keeps repeated calls cheap.
Block longest_match(std::span<const std::string> hyp, std::size_t hlo, std::size_t hhi,
                    std::size_t rlo, std::size_t rhi,
                    const std::unordered_map<std::string_view, std::vector<std::size_t>>& ref_index,
                    std::vector<std::size_t>& run_len, std::vector<std::size_t>& prev_run_len) {
    Block best{hlo, rlo, 0};
    std::vector<std::size_t> touched;
    std::vector<std::size_t> prev_touched;
    for (std::size_t i = hlo; i < hhi; ++i) {
        // run_len storage cycles through a two-row window; rows are zeroed
        // before reuse so the caller-shared arrays stay clean across calls.
        std::swap(run_len, prev_run_len);
        std::swap(touched, prev_touched);
        touched.clear();
        auto it = ref_index.find(hyp[i]);
        if (it != ref_index.end()) {
            for (std::size_t j : it->second) {
                if (j < rlo || j >= rhi) {
                    continue;
                }
                const std::size_t k = (j > rlo ? prev_run_len[j - 1] : 0) + 1;
                run_len[j] = k;
                touched.push_back(j);
                if (k > best.len) {
                    best = {i - k + 1, j - k + 1, k};
                }
            }
        }
        for (std::size_t j : prev_touched) {
            prev_run_len[j] = 0;
        }
    }
    for (std::size_t j : touched) {
        run_len[j] = 0;
    }
    return best;
}

void emit_flank(std::vector<MatchOp>& ops, std::size_t hlo, std::size_t hhi, std::size_t rlo,
                std::size_t rhi) {
    if (hlo < hhi && rlo < rhi) {
        ops.push_back({MatchKind::Replace, hlo, hhi, rlo, rhi});
    } else if (hlo < hhi) {
        ops.push_back({MatchKind::Delete, hlo, hhi, rlo, rlo});
    } else if (rlo < rhi) {
        ops.push_back({MatchKind::Insert, hlo, hlo, rlo, rhi});
    }
}

void diff_range(std::span<const std::string> hyp, std::span<const std::string> ref,
                std::size_t hlo, std::size_t hhi, std::size_t rlo, std::size_t rhi,
                const std::unordered_map<std::string_view, std::vector<std::size_t>>& ref_index,
                std::vector<std::size_t>& run_len, std::vector<std::size_t>& prev_run_len,
                std::vector<MatchOp>& ops) {
    const Block b = longest_match(hyp, hlo, hhi, rlo, rhi, ref_index, run_len, prev_run_len);
    if (b.len == 0) {
        emit_flank(ops, hlo, hhi, rlo, rhi);
        return;
    }
    diff_range(hyp, ref, hlo, b.hyp_pos, rlo, b.ref_pos, ref_index, run_len, prev_run_len, ops);
    if (!ops.empty() && ops.back().kind == MatchKind::Equal &&
        ops.back().hyp_end == b.hyp_pos && ops.back().ref_end == b.ref_pos) {
        ops.back().hyp_end = b.hyp_pos + b.len;
        ops.back().ref_end = b.ref_pos + b.len;
    } else {
        ops.push_back({MatchKind::Equal, b.hyp_pos, b.hyp_pos + b.len, b.ref_pos, b.ref_pos + b.len});
    }
    diff_range(hyp, ref, b.hyp_pos + b.len, hhi, b.ref_pos + b.len, rhi, ref_index, run_len,
               prev_run_len, ops);
}

}  // namespace

std::vector<MatchOp> diff_match(std::span<const std::string> hyp_tokens,
                                std::span<const std::string> ref_tokens) {
    std::unordered_map<std::string_view, std::vector<std::size_t>> ref_index;
    for (std::size_t j = 0; j < ref_tokens.size(); ++j) {
        ref_index[ref_tokens[j]].push_back(j);
    }
    std::vector<std::size_t> run_len(ref_tokens.size(), 0);
    std::vector<std::size_t> prev_run_len(ref_tokens.size(), 0);
    std::vector<MatchOp> ops;
    diff_range(hyp_tokens, ref_tokens, 0, hyp_tokens.size(), 0, ref_tokens.size(), ref_index,
               run_len, prev_run_len, ops);
    return ops;
}

std::vector<AnchoredWord> interpolate_gaps(std::vector<ProvisionalWord> words) {
    if (words.empty()) {
        return {};
    }
    Millis anchored_total = 0;
    std::size_t anchored_count = 0;
    for (const auto& w : words) {
        if (w.span) {
            anchored_total += w.span->duration();
            ++anchored_count;
        }
    }
    if (anchored_count == 0) {
        throw InputError("cannot interpolate: sequence has no time anchor");
    }
    const Millis mean_dur = static_cast<Millis>(
        std::llround(static_cast<double>(anchored_total) / static_cast<double>(anchored_count)));

    std::vector<AnchoredWord> out(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        out[i] = AnchoredWord{words[i].text, words[i].span.value_or(Interval{}), words[i].anchor};
    }

    std::size_t i = 0;
    while (i < words.size()) {
        if (words[i].span) {
            ++i;
            continue;
        }
        std::size_t run_end = i;
        while (run_end < words.size() && !words[run_end].span) {
            ++run_end;
        }
        const auto k = static_cast<Millis>(run_end - i);
        if (i == 0 && run_end == words.size()) {
            break;  // unreachable: anchored_count > 0
        }
        if (i == 0) {
            // Leading run: stack mean-duration spans backward from the first
            // anchor, clamping at the start of the clock.
            const Millis first_start = words[run_end].span->start;
            for (std::size_t j = i; j < run_end; ++j) {
                const auto back = static_cast<Millis>(run_end - j);
                out[j].span = {std::max<Millis>(0, first_start - back * mean_dur),
                               std::max<Millis>(0, first_start - (back - 1) * mean_dur)};
            }
        } else if (run_end == words.size()) {
            // Trailing run: stack forward from the last anchor.
            const Millis last_end = words[i - 1].span->end;
            for (std::size_t j = i; j < run_end; ++j) {
                const auto fwd = static_cast<Millis>(j - i);
                out[j].span = {last_end + fwd * mean_dur, last_end + (fwd + 1) * mean_dur};
            }
        } else {
            // Interior run: split the inter-anchor gap into k equal parts.
            const Millis right_start = words[run_end].span->start;
            const Millis lo = std::min(words[i - 1].span->end, right_start);
            const double width = static_cast<double>(right_start - lo);
            Millis prev = lo;
            for (std::size_t j = i; j < run_end; ++j) {
                const auto step = static_cast<double>(j - i + 1);
                const Millis next =
                    lo + static_cast<Millis>(std::llround(width * step / static_cast<double>(k)));
                out[j].span = {prev, next};
                prev = next;
            }
        }
        i = run_end;
    }
    return out;
}

std::vector<AnchoredWord> transfer_anchors(std::span<const TimedWord> hyp,
                                           std::span<const std::string> ref_tokens) {
    for (std::size_t i = 0; i < hyp.size(); ++i) {
        if (hyp[i].span.start > hyp[i].span.end) {
            throw InputError("hypothesis word " + std::to_string(i) + " has start > end");
        }
        if (i > 0 && hyp[i].span.start < hyp[i - 1].span.start) {
            throw InputError("hypothesis spans out of order at word " + std::to_string(i));
        }
    }
    if (ref_tokens.empty()) {
        return {};
    }

    // Compare NFC-normalized tokens; emit the reference spelling as given.
    std::vector<std::string> hyp_norm(hyp.size());
    for (std::size_t i = 0; i < hyp.size(); ++i) {
        hyp_norm[i] = nfc(hyp[i].text);
    }
    std::vector<std::string> ref_norm(ref_tokens.size());
    for (std::size_t j = 0; j < ref_tokens.size(); ++j) {
        ref_norm[j] = nfc(ref_tokens[j]);
    }

    std::vector<ProvisionalWord> provisional;
    provisional.reserve(ref_tokens.size());
    for (const auto& op : diff_match(hyp_norm, ref_norm)) {
        switch (op.kind) {
            case MatchKind::Equal:
                for (std::size_t k = 0; k < op.ref_end - op.ref_begin; ++k) {
                    provisional.push_back({ref_tokens[op.ref_begin + k],
                                           hyp[op.hyp_begin + k].span, Anchor::direct});
                }
                break;
            case MatchKind::Replace: {
                const std::size_t hyp_len = op.hyp_end - op.hyp_begin;
                for (std::size_t k = 0; k < op.ref_end - op.ref_begin; ++k) {
                    if (k < hyp_len) {
                        provisional.push_back({ref_tokens[op.ref_begin + k],
                                               hyp[op.hyp_begin + k].span, Anchor::borrowed});
                    } else {
                        provisional.push_back(
                            {ref_tokens[op.ref_begin + k], std::nullopt, Anchor::interpolated});
                    }
                }
                break;  // excess hypothesis words are discarded
            }
            case MatchKind::Insert:
                for (std::size_t j = op.ref_begin; j < op.ref_end; ++j) {
                    provisional.push_back({ref_tokens[j], std::nullopt, Anchor::interpolated});
                }
                break;
            case MatchKind::Delete:
                break;  // hallucinated words, no ground-truth counterpart
        }
    }
    return interpolate_gaps(std::move(provisional));
}

}  // namespace chronoalign
