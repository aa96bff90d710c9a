#include "chronoalign/time.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "chronoalign/error.hpp"

namespace chronoalign {

Millis ms_from_seconds(double seconds) {
    if (!std::isfinite(seconds)) {
        throw InputError("time value must be finite");
    }
    // llround rounds half away from zero, which is half-up for the
    // non-negative clock.
    const auto ms = static_cast<Millis>(std::llround(seconds * 1000.0));
    if (ms < 0) {
        throw InputError("time value must be non-negative, got " + std::to_string(seconds));
    }
    return ms;
}

double seconds_from_ms(Millis ms) {
    return static_cast<double>(ms) / 1000.0;
}

std::string seconds_str(Millis ms) {
    const bool neg = ms < 0;
    const Millis abs_ms = neg ? -ms : ms;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%lld.%03lld", neg ? "-" : "",
                  static_cast<long long>(abs_ms / 1000),
                  static_cast<long long>(abs_ms % 1000));
    return buf;
}

Millis parse_seconds_str(std::string_view text) {
    if (text.empty()) {
        throw ParseError("empty time literal");
    }
    std::size_t pos = 0;
    if (text[pos] == '+') {
        ++pos;
    }
    if (pos < text.size() && text[pos] == '-') {
        throw ParseError("time literal must be non-negative: '" + std::string(text) + "'");
    }
    Millis whole = 0;
    bool any_digit = false;
    for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
        any_digit = true;
        if (whole > (INT64_MAX - 9) / 10) {
            throw ParseError("time literal out of range: '" + std::string(text) + "'");
        }
        whole = whole * 10 + (text[pos] - '0');
    }
    Millis frac_ms = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        int digits = 0;
        bool round_up = false;
        for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
            any_digit = true;
            ++digits;
            if (digits <= 3) {
                frac_ms = frac_ms * 10 + (text[pos] - '0');
            } else if (digits == 4) {
                round_up = text[pos] >= '5';
            }
        }
        for (; digits < 3; ++digits) {
            frac_ms *= 10;
        }
        if (round_up) {
            ++frac_ms;
        }
    }
    if (!any_digit || pos != text.size()) {
        throw ParseError("malformed time literal: '" + std::string(text) + "'");
    }
    if (whole > (INT64_MAX - frac_ms) / 1000) {
        throw ParseError("time literal out of range: '" + std::string(text) + "'");
    }
    return whole * 1000 + frac_ms;
}

Timeline::Timeline(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (iv.start < 0) {
            throw InputError("interval start must be non-negative");
        }
        if (iv.start > iv.end) {
            throw InputError("interval start must not exceed end: [" + seconds_str(iv.start) +
                             ", " + seconds_str(iv.end) + "]");
        }
    }
    std::erase_if(intervals, [](const Interval& iv) { return iv.empty(); });
    std::sort(intervals.begin(), intervals.end());
    for (const auto& iv : intervals) {
        if (!intervals_.empty() && iv.start <= intervals_.back().end) {
            intervals_.back().end = std::max(intervals_.back().end, iv.end);
        } else {
            intervals_.push_back(iv);
        }
    }
}

Millis Timeline::duration() const {
    Millis total = 0;
    for (const auto& iv : intervals_) {
        total += iv.duration();
    }
    return total;
}

bool Timeline::contains(Millis t) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                               [](Millis v, const Interval& iv) { return v < iv.start; });
    return it != intervals_.begin() && std::prev(it)->contains(t);
}

bool Timeline::covers(const Interval& iv) const {
    if (iv.empty()) {
        return true;
    }
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), iv.start,
                               [](Millis v, const Interval& x) { return v < x.start; });
    if (it == intervals_.begin()) {
        return false;
    }
    const Interval& host = *std::prev(it);
    return host.start <= iv.start && iv.end <= host.end;
}

Timeline timeline_union(const Timeline& a, const Timeline& b) {
    std::vector<Interval> merged;
    merged.reserve(a.size() + b.size());
    merged.insert(merged.end(), a.intervals().begin(), a.intervals().end());
    merged.insert(merged.end(), b.intervals().begin(), b.intervals().end());
    return Timeline(std::move(merged));
}

Timeline timeline_intersect(const Timeline& a, const Timeline& b) {
    std::vector<Interval> out;
    std::size_t i = 0;
    std::size_t j = 0;
    const auto& av = a.intervals();
    const auto& bv = b.intervals();
    while (i < av.size() && j < bv.size()) {
        const Millis lo = std::max(av[i].start, bv[j].start);
        const Millis hi = std::min(av[i].end, bv[j].end);
        if (lo < hi) {
            out.push_back({lo, hi});
        }
        if (av[i].end < bv[j].end) {
            ++i;
        } else {
            ++j;
        }
    }
    return Timeline(std::move(out));
}

Timeline timeline_subtract(const Timeline& a, const Timeline& b) {
    std::vector<Interval> out;
    std::size_t j = 0;
    const auto& bv = b.intervals();
    for (Interval iv : a.intervals()) {
        while (j < bv.size() && bv[j].end <= iv.start) {
            ++j;
        }
        std::size_t k = j;
        Millis cursor = iv.start;
        while (k < bv.size() && bv[k].start < iv.end) {
            if (bv[k].start > cursor) {
                out.push_back({cursor, bv[k].start});
            }
            cursor = std::max(cursor, bv[k].end);
            if (cursor >= iv.end) {
                break;
            }
            ++k;
        }
        if (cursor < iv.end) {
            out.push_back({cursor, iv.end});
        }
    }
    return Timeline(std::move(out));
}

Millis timeline_duration(const Timeline& t) {
    return t.duration();
}

TimeMap::TimeMap(Timeline speech) : speech_(std::move(speech)) {
    offsets_.reserve(speech_.size());
    for (const auto& iv : speech_.intervals()) {
        offsets_.push_back(total_);
        total_ += iv.duration();
    }
}

Millis TimeMap::to_original(Millis t_concat) const {
    if (t_concat < 0 || t_concat >= total_) {
        throw InputError("concatenated time " + seconds_str(t_concat) +
                         " outside domain [0, " + seconds_str(total_) + ")");
    }
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), t_concat);
    const auto idx = static_cast<std::size_t>(std::distance(offsets_.begin(), it)) - 1;
    return speech_.intervals()[idx].start + (t_concat - offsets_[idx]);
}

Millis TimeMap::to_concat(Millis t_original) const {
    const auto& ivs = speech_.intervals();
    auto it = std::upper_bound(ivs.begin(), ivs.end(), t_original,
                               [](Millis v, const Interval& iv) { return v < iv.start; });
    if (it != ivs.begin()) {
        const auto idx = static_cast<std::size_t>(std::distance(ivs.begin(), it)) - 1;
        if (ivs[idx].contains(t_original)) {
            return offsets_[idx] + (t_original - ivs[idx].start);
        }
    }
    throw InputError("original time " + seconds_str(t_original) + " is not inside a speech region");
}

}  // namespace chronoalign
