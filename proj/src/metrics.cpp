#include "chronoalign/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chronoalign/error.hpp"

namespace chronoalign {

WerBreakdown wer(std::span<const std::string> ref_tokens, std::span<const std::string> hyp_tokens) {
    if (ref_tokens.empty()) {
        throw InputError("WER is undefined for an empty reference");
    }
    struct Cell {
        std::size_t cost = 0;
        std::size_t subs = 0;
        std::size_t dels = 0;
        std::size_t inss = 0;
    };
    const std::size_t m = hyp_tokens.size();
    std::vector<Cell> row(m + 1);
    std::vector<Cell> next(m + 1);
    for (std::size_t j = 1; j <= m; ++j) {
        row[j] = {j, 0, 0, j};
    }
    for (std::size_t i = 1; i <= ref_tokens.size(); ++i) {
        next[0] = {i, 0, i, 0};
        for (std::size_t j = 1; j <= m; ++j) {
            const bool same = ref_tokens[i - 1] == hyp_tokens[j - 1];
            // Ties prefer substitution, then deletion, then insertion.
            Cell best = row[j - 1];
            best.cost += same ? 0 : 1;
            best.subs += same ? 0 : 1;
            if (row[j].cost + 1 < best.cost) {
                best = row[j];
                best.cost += 1;
                best.dels += 1;
            }
            if (next[j - 1].cost + 1 < best.cost) {
                best = next[j - 1];
                best.cost += 1;
                best.inss += 1;
            }
            next[j] = best;
        }
        std::swap(row, next);
    }
    const Cell& final = row[m];
    return WerBreakdown{final.subs, final.dels, final.inss, ref_tokens.size()};
}

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// O(n^3) Hungarian algorithm (minimization over a square cost matrix).
// Returns the minimal total cost; `row_to_col` receives the assignment.
std::int64_t hungarian_min(const std::vector<std::vector<std::int64_t>>& cost,
                           std::vector<int>* row_to_col = nullptr) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) {
        return 0;
    }
    std::vector<std::int64_t> u(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::int64_t> v(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> minv(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            int j1 = -1;
            std::int64_t delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    continue;
                }
                const std::int64_t cur = cost[static_cast<std::size_t>(i0 - 1)]
                                             [static_cast<std::size_t>(j - 1)] -
                                         u[static_cast<std::size_t>(i0)] -
                                         v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::int64_t total = 0;
    if (row_to_col != nullptr) {
        row_to_col->assign(static_cast<std::size_t>(n), -1);
    }
    for (int j = 1; j <= n; ++j) {
        const int i = p[static_cast<std::size_t>(j)];
        if (i > 0) {
            total += cost[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            if (row_to_col != nullptr) {
                (*row_to_col)[static_cast<std::size_t>(i - 1)] = j - 1;
            }
        }
    }
    return total;
}

// Maximum-total assignment value of a rectangular non-negative matrix,
// unassigned rows/columns contributing zero.
std::int64_t max_assignment_value(const std::vector<std::vector<Millis>>& overlap) {
    const std::size_t rows = overlap.size();
    const std::size_t cols = rows == 0 ? 0 : overlap.front().size();
    const std::size_t n = std::max(rows, cols);
    if (n == 0) {
        return 0;
    }
    std::vector<std::vector<std::int64_t>> cost(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            cost[i][j] = -overlap[i][j];
        }
    }
    return -hungarian_min(cost);
}

// Lexicographically canonical optimal mapping: for each ref index in label
// order, fix the smallest hyp index that still permits the global optimum.
// Zero-overlap pairs are never mapped.
std::vector<int> canonical_assignment(const std::vector<std::vector<Millis>>& overlap) {
    const std::size_t rows = overlap.size();
    const std::size_t cols = rows == 0 ? 0 : overlap.front().size();
    std::vector<int> ref_to_hyp(rows, -1);
    std::vector<char> hyp_taken(cols, 0);
    std::int64_t fixed_value = 0;
    const std::int64_t target = max_assignment_value(overlap);

    auto remaining_best = [&](std::size_t skip_ref, int extra_hyp) {
        std::vector<std::vector<Millis>> sub;
        for (std::size_t i = skip_ref + 1; i < rows; ++i) {
            std::vector<Millis> r;
            for (std::size_t j = 0; j < cols; ++j) {
                if (!hyp_taken[j] && static_cast<int>(j) != extra_hyp) {
                    r.push_back(overlap[i][j]);
                }
            }
            sub.push_back(std::move(r));
        }
        return max_assignment_value(sub);
    };

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (hyp_taken[j] || overlap[i][j] <= 0) {
                continue;
            }
            const std::int64_t value =
                fixed_value + overlap[i][j] + remaining_best(i, static_cast<int>(j));
            if (value == target) {
                ref_to_hyp[i] = static_cast<int>(j);
                hyp_taken[j] = 1;
                fixed_value += overlap[i][j];
                break;
            }
        }
    }
    return ref_to_hyp;
}

struct ScoredTracks {
    std::vector<std::string> ref_speakers;
    std::vector<std::string> hyp_speakers;
    std::vector<Timeline> ref_tracks;  // per-speaker, collar-excluded
    std::vector<Timeline> hyp_tracks;
    std::vector<std::vector<Millis>> overlap;
};

ScoredTracks build_scored_tracks(const Diarization& ref, const Diarization& hyp, Millis collar) {
    Timeline collar_zone;
    if (collar > 0) {
        std::vector<Interval> zones;
        for (const auto& s : ref.segments()) {
            zones.push_back({std::max<Millis>(0, s.span.start - collar), s.span.start + collar});
            zones.push_back({std::max<Millis>(0, s.span.end - collar), s.span.end + collar});
        }
        collar_zone = Timeline(std::move(zones));
    }
    ScoredTracks t;
    t.ref_speakers = ref.speakers();
    t.hyp_speakers = hyp.speakers();
    for (const auto& s : t.ref_speakers) {
        t.ref_tracks.push_back(timeline_subtract(ref.speaker_timeline(s), collar_zone));
    }
    for (const auto& s : t.hyp_speakers) {
        t.hyp_tracks.push_back(timeline_subtract(hyp.speaker_timeline(s), collar_zone));
    }
    t.overlap.assign(t.ref_tracks.size(), std::vector<Millis>(t.hyp_tracks.size(), 0));
    for (std::size_t i = 0; i < t.ref_tracks.size(); ++i) {
        for (std::size_t j = 0; j < t.hyp_tracks.size(); ++j) {
            t.overlap[i][j] = timeline_intersect(t.ref_tracks[i], t.hyp_tracks[j]).duration();
        }
    }
    return t;
}

std::map<std::string, std::string> mapping_from_assignment(const ScoredTracks& t,
                                                           const std::vector<int>& ref_to_hyp) {
    std::map<std::string, std::string> hyp_to_ref;
    for (std::size_t i = 0; i < ref_to_hyp.size(); ++i) {
        if (ref_to_hyp[i] >= 0) {
            hyp_to_ref[t.hyp_speakers[static_cast<std::size_t>(ref_to_hyp[i])]] =
                t.ref_speakers[i];
        }
    }
    return hyp_to_ref;
}

}  // namespace

DerBreakdown der(const Diarization& ref, const Diarization& hyp, Millis collar) {
    if (ref.empty()) {
        throw InputError("DER is undefined for an empty reference");
    }
    if (collar < 0) {
        throw ConfigError("collar must be non-negative");
    }
    const ScoredTracks t = build_scored_tracks(ref, hyp, collar);
    const std::vector<int> ref_to_hyp = canonical_assignment(t.overlap);

    // Elementary-region sweep over all scored track boundaries.
    std::vector<Millis> bounds;
    for (const auto& tl : t.ref_tracks) {
        for (const auto& iv : tl.intervals()) {
            bounds.push_back(iv.start);
            bounds.push_back(iv.end);
        }
    }
    for (const auto& tl : t.hyp_tracks) {
        for (const auto& iv : tl.intervals()) {
            bounds.push_back(iv.start);
            bounds.push_back(iv.end);
        }
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    DerBreakdown out;
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
        const Millis t1 = bounds[b];
        const Millis dur = bounds[b + 1] - t1;
        std::int64_t n_ref = 0;
        std::int64_t n_hyp = 0;
        std::int64_t n_correct = 0;
        std::vector<char> hyp_active(t.hyp_tracks.size(), 0);
        for (std::size_t j = 0; j < t.hyp_tracks.size(); ++j) {
            hyp_active[j] = t.hyp_tracks[j].contains(t1) ? 1 : 0;
            n_hyp += hyp_active[j];
        }
        for (std::size_t i = 0; i < t.ref_tracks.size(); ++i) {
            if (!t.ref_tracks[i].contains(t1)) {
                continue;
            }
            ++n_ref;
            const int j = ref_to_hyp[i];
            if (j >= 0 && hyp_active[static_cast<std::size_t>(j)]) {
                ++n_correct;
            }
        }
        out.ref_speech += n_ref * dur;
        out.missed += std::max<std::int64_t>(0, n_ref - n_hyp) * dur;
        out.false_alarm += std::max<std::int64_t>(0, n_hyp - n_ref) * dur;
        out.confusion += (std::min(n_ref, n_hyp) - n_correct) * dur;
    }
    if (out.ref_speech == 0) {
        throw InputError("DER is undefined: no scored reference speech" +
                         std::string(collar > 0 ? " (collar removed all of it)" : ""));
    }
    out.mapping = mapping_from_assignment(t, ref_to_hyp);
    return out;
}

std::map<std::string, std::string> optimal_speaker_mapping(const Diarization& ref,
                                                           const Diarization& hyp) {
    const ScoredTracks t = build_scored_tracks(ref, hyp, 0);
    return mapping_from_assignment(t, canonical_assignment(t.overlap));
}

double aggregate(std::span<const FileRate> per_file, bool weighted) {
    if (per_file.empty()) {
        throw InputError("cannot aggregate an empty result set");
    }
    double num = 0.0;
    double den = 0.0;
    for (const auto& f : per_file) {
        const double w = weighted ? f.weight : 1.0;
        if (weighted && !(w > 0)) {
            throw InputError("aggregate weight for '" + f.id + "' must be positive");
        }
        num += f.rate * w;
        den += w;
    }
    return num / den;
}

std::vector<SweepRow> sweep_grid(
    const std::map<std::string, std::vector<double>>& grid,
    const std::function<double(const std::map<std::string, double>&)>& evaluate) {
    if (grid.empty()) {
        throw InputError("sweep grid must name at least one parameter");
    }
    std::vector<std::string> keys;
    for (const auto& [key, values] : grid) {
        if (values.empty()) {
            throw InputError("sweep parameter '" + key + "' has no values");
        }
        keys.push_back(key);
    }

    std::vector<SweepRow> rows;
    std::vector<std::size_t> odometer(keys.size(), 0);
    while (true) {
        SweepRow row;
        for (std::size_t k = 0; k < keys.size(); ++k) {
            row.params[keys[k]] = grid.at(keys[k])[odometer[k]];
        }
        try {
            row.score = evaluate(row.params);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));

        bool done = false;
        std::size_t k = keys.size();
        while (true) {
            if (k == 0) {
                done = true;  // odometer wrapped fully
                break;
            }
            --k;
            if (++odometer[k] < grid.at(keys[k]).size()) {
                break;
            }
            odometer[k] = 0;
        }
        if (done) {
            break;
        }
    }

    auto params_less = [](const SweepRow& a, const SweepRow& b) {
        return std::lexicographical_compare(a.params.begin(), a.params.end(), b.params.begin(),
                                            b.params.end());
    };
    std::sort(rows.begin(), rows.end(), [&](const SweepRow& a, const SweepRow& b) {
        if (a.ok != b.ok) {
            return a.ok;  // failed rows last
        }
        if (a.ok && a.score != b.score) {
            return a.score < b.score;
        }
        return params_less(a, b);
    });
    if (!rows.empty() && rows.front().ok) {
        rows.front().best = true;
    }
    return rows;
}

}  // namespace chronoalign
