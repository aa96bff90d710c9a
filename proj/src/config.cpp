#include "chronoalign/config.hpp"

#include <charconv>
#include <cmath>

#include "chronoalign/error.hpp"
#include "chronoalign/io.hpp"

namespace chronoalign {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    }
    return out;
}

Millis parse_duration(const std::string& key, const std::string& value) {
    try {
        return parse_seconds_str(value);
    } catch (const ParseError& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::int64_t out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError("config key '" + key + "': not an integer: '" + value + "'");
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

void PipelineConfig::validate() const {
    vad().validate();
    merge().validate();
    repetition().validate();
    if (window_overlap < 0 || window_overlap >= max_window) {
        throw ConfigError("window_overlap must satisfy 0 <= window_overlap < max_window");
    }
    if (chunk_min < 0 || chunk_min > chunk_max) {
        throw ConfigError("chunk bounds must satisfy 0 <= chunk_min <= chunk_max");
    }
    if (!(cluster_threshold >= 0.0 && cluster_threshold <= 2.0)) {
        throw ConfigError("cluster_threshold must lie in [0, 2] (cosine distance)");
    }
    if (min_duration_off < 0) {
        throw ConfigError("min_duration_off must be non-negative");
    }
    if (transient < 0) {
        throw ConfigError("transient must be non-negative");
    }
    if (collar < 0) {
        throw ConfigError("collar must be non-negative");
    }
    if (!(train_frac >= 0.0 && train_frac <= 1.0)) {
        throw ConfigError("train_frac must lie in [0, 1]");
    }
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
    if (key == "onset") {
        onset = parse_double(key, value);
    } else if (key == "offset") {
        offset = parse_double(key, value);
    } else if (key == "min_speech") {
        min_speech = parse_duration(key, value);
    } else if (key == "min_silence") {
        min_silence = parse_duration(key, value);
    } else if (key == "max_window") {
        max_window = parse_duration(key, value);
    } else if (key == "window_overlap") {
        window_overlap = parse_duration(key, value);
    } else if (key == "chunk_max") {
        chunk_max = parse_duration(key, value);
    } else if (key == "chunk_min") {
        chunk_min = parse_duration(key, value);
    } else if (key == "rep_max_n") {
        rep_max_n = static_cast<int>(parse_int(key, value));
    } else if (key == "rep_min_repeats") {
        rep_min_repeats = static_cast<int>(parse_int(key, value));
    } else if (key == "cluster_threshold") {
        cluster_threshold = parse_double(key, value);
    } else if (key == "min_duration_off") {
        min_duration_off = parse_duration(key, value);
    } else if (key == "merge_min_gap") {
        merge_min_gap = parse_duration(key, value);
    } else if (key == "merge_anchor_gap") {
        merge_anchor_gap = parse_duration(key, value);
    } else if (key == "merge_max_gap") {
        merge_max_gap = parse_duration(key, value);
    } else if (key == "density_window") {
        density_window = parse_duration(key, value);
    } else if (key == "transient") {
        transient = parse_duration(key, value);
    } else if (key == "collar") {
        collar = parse_duration(key, value);
    } else if (key == "split_seed") {
        split_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "train_frac") {
        train_frac = parse_double(key, value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void PipelineConfig::set_numeric(const std::string& key, double value) {
    if (key == "onset" || key == "offset" || key == "cluster_threshold" || key == "train_frac") {
        set(key, double_str(value));
    } else if (key == "rep_max_n" || key == "rep_min_repeats" || key == "split_seed") {
        const auto i = static_cast<std::int64_t>(value);
        if (static_cast<double>(i) != value) {
            throw ConfigError("config key '" + key + "' requires an integer value");
        }
        set(key, std::to_string(i));
    } else {
        set(key, seconds_str(ms_from_seconds(value)));
    }
}

std::string PipelineConfig::canonical_str() const {
    std::string out;
    out += "onset = " + double_str(onset) + "\n";
    out += "offset = " + double_str(offset) + "\n";
    out += "min_speech = " + seconds_str(min_speech) + "\n";
    out += "min_silence = " + seconds_str(min_silence) + "\n";
    out += "max_window = " + seconds_str(max_window) + "\n";
    out += "window_overlap = " + seconds_str(window_overlap) + "\n";
    out += "chunk_max = " + seconds_str(chunk_max) + "\n";
    out += "chunk_min = " + seconds_str(chunk_min) + "\n";
    out += "rep_max_n = " + std::to_string(rep_max_n) + "\n";
    out += "rep_min_repeats = " + std::to_string(rep_min_repeats) + "\n";
    out += "cluster_threshold = " + double_str(cluster_threshold) + "\n";
    out += "min_duration_off = " + seconds_str(min_duration_off) + "\n";
    out += "merge_min_gap = " + seconds_str(merge_min_gap) + "\n";
    out += "merge_anchor_gap = " + seconds_str(merge_anchor_gap) + "\n";
    out += "merge_max_gap = " + seconds_str(merge_max_gap) + "\n";
    out += "density_window = " + seconds_str(density_window) + "\n";
    out += "transient = " + seconds_str(transient) + "\n";
    out += "collar = " + seconds_str(collar) + "\n";
    out += "split_seed = " + std::to_string(split_seed) + "\n";
    out += "train_frac = " + double_str(train_frac) + "\n";
    return out;
}

PipelineConfig parse_config(std::string_view text, PipelineConfig base) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line =
            text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + std::string(line) + "'");
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": empty key or value");
        }
        try {
            base.set(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

}  // namespace chronoalign
