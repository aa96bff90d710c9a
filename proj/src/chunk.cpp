#include "chronoalign/chunk.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "chronoalign/error.hpp"

namespace chronoalign {

std::string Chunk::text() const {
    std::string joined;
    for (const auto& w : words) {
        if (!joined.empty()) {
            joined.push_back(' ');
        }
        joined += w.text;
    }
    return joined;
}

std::vector<TimedWord> globalize(std::vector<TimedWord> words, Millis window_start) {
    if (window_start < 0) {
        throw InputError("window start must be non-negative");
    }
    for (auto& w : words) {
        w.span.start += window_start;
        w.span.end += window_start;
    }
    return words;
}

std::vector<Chunk> greedy_partition(std::span<const AnchoredWord> words, Millis max_dur,
                                    std::string source_id) {
    if (max_dur <= 0) {
        throw ConfigError("chunk max duration must be positive");
    }
    for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i].span.start < words[i - 1].span.start) {
            throw InputError("words must be sorted by span start (violated at word " +
                             std::to_string(i) + ")");
        }
    }
    std::vector<Chunk> chunks;
    for (const auto& w : words) {
        if (!chunks.empty() && !chunks.back().over_length &&
            w.span.end - chunks.back().span.start <= max_dur) {
            chunks.back().span.end = w.span.end;
            chunks.back().words.push_back(w);
        } else {
            Chunk c;
            c.chunk_id = static_cast<std::int64_t>(chunks.size());
            c.source_id = source_id;
            c.span = w.span;
            c.words.push_back(w);
            c.over_length = w.span.duration() > max_dur;
            chunks.push_back(std::move(c));
        }
    }
    return chunks;
}

std::vector<Chunk> filter_chunks(std::vector<Chunk> chunks, Millis min_dur, Millis max_dur) {
    if (min_dur > max_dur) {
        throw ConfigError("chunk filter requires min_dur <= max_dur");
    }
    std::erase_if(chunks, [&](const Chunk& c) {
        return c.duration() < min_dur || c.duration() > max_dur;
    });
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        chunks[i].chunk_id = static_cast<std::int64_t>(i);
    }
    return chunks;
}

ChunkStats corpus_stats(std::span<const Chunk> chunks) {
    if (chunks.empty()) {
        throw InputError("cannot summarize an empty chunk corpus");
    }
    Millis total = 0;
    Millis shortest = chunks.front().duration();
    for (const auto& c : chunks) {
        total += c.duration();
        shortest = std::min(shortest, c.duration());
    }
    ChunkStats stats;
    stats.total_chunks = chunks.size();
    stats.total_duration_hours = static_cast<double>(total) / 3'600'000.0;
    stats.mean_duration_s =
        seconds_from_ms(total) / static_cast<double>(chunks.size());
    stats.min_duration_s = seconds_from_ms(shortest);
    return stats;
}

namespace {

std::string group_thousands(std::size_t n) {
    std::string digits = std::to_string(n);
    std::string out;
    const std::size_t len = digits.size();
    for (std::size_t i = 0; i < len; ++i) {
        if (i > 0 && (len - i) % 3 == 0) {
            out.push_back(',');
        }
        out.push_back(digits[i]);
    }
    return out;
}

}  // namespace

std::string format_stats(const ChunkStats& stats) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "Total chunks            %s\n"
                  "Total duration          %.2f hours\n"
                  "Average chunk duration  %.2f seconds\n"
                  "Shortest chunk          %.2f seconds\n",
                  group_thousands(stats.total_chunks).c_str(), stats.total_duration_hours,
                  stats.mean_duration_s, stats.min_duration_s);
    return buf;
}

}  // namespace chronoalign
