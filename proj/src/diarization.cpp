#include "chronoalign/diarization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "chronoalign/error.hpp"

namespace chronoalign {

Diarization::Diarization(std::vector<SpeakerSegment> segments) {
    for (const auto& s : segments) {
        if (s.span.start < 0) {
            throw InputError("segment start must be non-negative");
        }
        if (s.span.start > s.span.end) {
            throw InputError("segment start must not exceed end: [" + seconds_str(s.span.start) +
                             ", " + seconds_str(s.span.end) + "]");
        }
        if (s.speaker.empty()) {
            throw InputError("speaker label must be non-empty");
        }
    }
    std::erase_if(segments, [](const SpeakerSegment& s) { return s.span.empty(); });
    std::sort(segments.begin(), segments.end());
    segments_ = std::move(segments);
    Millis max_end = 0;
    for (const auto& s : segments_) {
        if (s.span.start < max_end) {
            exclusive_ = false;
            break;
        }
        max_end = std::max(max_end, s.span.end);
    }
}

Timeline Diarization::speech() const {
    std::vector<Interval> spans;
    spans.reserve(segments_.size());
    for (const auto& s : segments_) {
        spans.push_back(s.span);
    }
    return Timeline(std::move(spans));
}

Timeline Diarization::speaker_timeline(const std::string& speaker) const {
    std::vector<Interval> spans;
    for (const auto& s : segments_) {
        if (s.speaker == speaker) {
            spans.push_back(s.span);
        }
    }
    return Timeline(std::move(spans));
}

std::vector<std::string> Diarization::speakers() const {
    std::set<std::string> labels;
    for (const auto& s : segments_) {
        labels.insert(s.speaker);
    }
    return {labels.begin(), labels.end()};
}

namespace {

void require_exclusive(const Diarization& d, const char* op) {
    if (!d.exclusive()) {
        throw InputError(std::string(op) + " requires a mutually exclusive diarization");
    }
}

// True if any segment of a different speaker overlaps the open gap.
bool gap_occupied(const Diarization& d, const std::string& speaker, Millis gap_start,
                  Millis gap_end) {
    for (const auto& s : d.segments()) {
        if (s.span.start >= gap_end) {
            break;
        }
        if (s.speaker != speaker && s.span.end > gap_start && s.span.start < gap_end) {
            return true;
        }
    }
    return false;
}

// Merge each speaker's consecutive segments whenever `allow(left, right)`
// approves the gap and no other speaker occupies it. Single left-to-right
// pass per speaker; a merged segment becomes the next left operand.
template <typename AllowFn>
Diarization merge_same_speaker(const Diarization& d, AllowFn allow) {
    std::vector<SpeakerSegment> out;
    for (const auto& speaker : d.speakers()) {
        SpeakerSegment current{};
        bool open = false;
        for (const auto& s : d.segments()) {
            if (s.speaker != speaker) {
                continue;
            }
            if (!open) {
                current = s;
                open = true;
                continue;
            }
            if (allow(current.span.end, s.span.start) &&
                !gap_occupied(d, speaker, current.span.end, s.span.start)) {
                current.span.end = s.span.end;
            } else {
                out.push_back(current);
                current = s;
            }
        }
        if (open) {
            out.push_back(current);
        }
    }
    return Diarization(std::move(out));
}

}  // namespace

Diarization exclusive_assign(const Diarization& d) {
    // Precedence: earliest start, then longer segment, then smaller label.
    // Every higher-precedence segment starts no later than a lower one, so
    // it can only shadow a prefix of the lower segment's span; sweeping in
    // precedence order with a running max end yields each segment's
    // remainder directly.
    std::vector<SpeakerSegment> order = d.segments();
    std::sort(order.begin(), order.end(), [](const SpeakerSegment& a, const SpeakerSegment& b) {
        if (a.span.start != b.span.start) {
            return a.span.start < b.span.start;
        }
        if (a.span.duration() != b.span.duration()) {
            return a.span.duration() > b.span.duration();
        }
        return a.speaker < b.speaker;
    });
    std::vector<SpeakerSegment> out;
    Millis covered_end = 0;  // all starts are >= 0, so 0 is a neutral floor
    for (const auto& s : order) {
        const Millis cut = std::max(s.span.start, covered_end);
        if (cut < s.span.end) {
            out.push_back({{cut, s.span.end}, s.speaker});
        }
        covered_end = std::max(covered_end, s.span.end);
    }
    return Diarization(std::move(out));
}

Diarization fill_intra_speaker_gaps(const Diarization& d, Millis min_duration_off) {
    require_exclusive(d, "fill_intra_speaker_gaps");
    if (min_duration_off < 0) {
        throw ConfigError("min_duration_off must be non-negative");
    }
    return merge_same_speaker(
        d, [&](Millis left_end, Millis right_start) { return right_start - left_end < min_duration_off; });
}

void MergeConfig::validate() const {
    if (!(0 <= min_gap && min_gap <= anchor_gap && anchor_gap <= max_gap)) {
        throw ConfigError("merge gaps must satisfy 0 <= min_gap <= anchor_gap <= max_gap");
    }
    if (density_window <= 0) {
        throw ConfigError("density_window must be positive");
    }
}

Diarization adaptive_merge(const Diarization& d, const MergeConfig& cfg) {
    require_exclusive(d, "adaptive_merge");
    cfg.validate();
    const Timeline speech = d.speech();  // pre-merge timeline, fixed for the pass
    auto allowed_gap = [&](Millis gap_mid) {
        const Millis lo = std::max<Millis>(0, gap_mid - cfg.density_window / 2);
        const Millis hi = gap_mid + cfg.density_window / 2;
        const Timeline local = timeline_intersect(speech, Timeline({{lo, hi}}));
        const double rho =
            static_cast<double>(local.duration()) / static_cast<double>(cfg.density_window);
        const double g = seconds_from_ms(cfg.anchor_gap) + (0.5 - rho) * 0.8;
        const Millis g_ms = static_cast<Millis>(std::llround(g * 1000.0));
        return std::clamp(g_ms, cfg.min_gap, cfg.max_gap);
    };
    return merge_same_speaker(d, [&](Millis left_end, Millis right_start) {
        const Millis gap = right_start - left_end;
        const Millis mid = left_end + (gap + 1) / 2;  // round-half-up midpoint
        return gap <= allowed_gap(mid);
    });
}

Diarization purge_transients(const Diarization& d, Millis min_dur) {
    if (min_dur < 0) {
        throw ConfigError("transient threshold must be non-negative");
    }
    std::vector<SpeakerSegment> out;
    for (const auto& s : d.segments()) {
        if (s.span.duration() >= min_dur) {
            out.push_back(s);
        }
    }
    return Diarization(std::move(out));
}

Diarization intersect_with_vad(const Diarization& d, const Timeline& vad, Millis min_dur) {
    if (min_dur < 0) {
        throw ConfigError("transient threshold must be non-negative");
    }
    std::vector<SpeakerSegment> out;
    for (const auto& s : d.segments()) {
        const Timeline clipped = timeline_intersect(Timeline({s.span}), vad);
        for (const auto& piece : clipped.intervals()) {
            if (piece.duration() >= min_dur) {
                out.push_back({piece, s.speaker});
            }
        }
    }
    return Diarization(std::move(out));
}

namespace {

struct Cluster {
    std::vector<double> sum;   // sum of unit-normalized member vectors
    std::size_t count = 0;
    std::size_t min_index = 0;
    std::vector<std::size_t> members;
};

double centroid_distance(const Cluster& a, const Cluster& b) {
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t k = 0; k < a.sum.size(); ++k) {
        const double x = a.sum[k] / static_cast<double>(a.count);
        const double y = b.sum[k] / static_cast<double>(b.count);
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    const double denom = std::sqrt(na) * std::sqrt(nb);
    if (denom < 1e-300) {
        return 2.0;  // degenerate centroid: maximally distant
    }
    return 1.0 - dot / denom;
}

}  // namespace

std::vector<int> agglomerative_cluster(std::span<const Embedding> embeddings, double threshold) {
    if (embeddings.empty()) {
        throw InputError("clustering requires at least one embedding");
    }
    const std::size_t dim = embeddings.front().vector.size();
    std::vector<Cluster> clusters;
    clusters.reserve(embeddings.size());
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        const auto& v = embeddings[i].vector;
        if (v.size() != dim) {
            throw InputError("embedding " + std::to_string(i) + " has dimension " +
                             std::to_string(v.size()) + ", expected " + std::to_string(dim));
        }
        double norm_sq = 0.0;
        for (double x : v) {
            if (!std::isfinite(x)) {
                throw InputError("embedding " + std::to_string(i) + " has a non-finite entry");
            }
            norm_sq += x * x;
        }
        if (norm_sq <= 0.0) {
            throw InputError("embedding " + std::to_string(i) + " is a zero vector");
        }
        const double norm = std::sqrt(norm_sq);
        Cluster c;
        c.sum.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            c.sum[k] = v[k] / norm;
        }
        c.count = 1;
        c.min_index = i;
        c.members = {i};
        clusters.push_back(std::move(c));
    }

    while (clusters.size() > 1) {
        double best_dist = std::numeric_limits<double>::infinity();
        std::size_t best_a = 0;
        std::size_t best_b = 0;
        for (std::size_t a = 0; a < clusters.size(); ++a) {
            for (std::size_t b = a + 1; b < clusters.size(); ++b) {
                const double dist = centroid_distance(clusters[a], clusters[b]);
                auto lo = std::min(clusters[a].min_index, clusters[b].min_index);
                auto hi = std::max(clusters[a].min_index, clusters[b].min_index);
                auto best_lo = std::min(clusters[best_a].min_index, clusters[best_b].min_index);
                auto best_hi = std::max(clusters[best_a].min_index, clusters[best_b].min_index);
                if (dist < best_dist ||
                    (dist == best_dist && std::tie(lo, hi) < std::tie(best_lo, best_hi))) {
                    best_dist = dist;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (!(best_dist <= threshold)) {
            break;
        }
        Cluster& keep = clusters[best_a];
        Cluster& gone = clusters[best_b];
        for (std::size_t k = 0; k < dim; ++k) {
            keep.sum[k] += gone.sum[k];
        }
        keep.count += gone.count;
        keep.min_index = std::min(keep.min_index, gone.min_index);
        keep.members.insert(keep.members.end(), gone.members.begin(), gone.members.end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
    }

    std::vector<int> labels(embeddings.size(), -1);
    std::vector<int> cluster_of(embeddings.size(), -1);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (std::size_t m : clusters[c].members) {
            cluster_of[m] = static_cast<int>(c);
        }
    }
    int next = 0;
    std::vector<int> relabel(clusters.size(), -1);
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        int& r = relabel[static_cast<std::size_t>(cluster_of[i])];
        if (r < 0) {
            r = next++;
        }
        labels[i] = r;
    }
    return labels;
}

}  // namespace chronoalign
