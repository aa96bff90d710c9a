#pragma once

#include <span>
#include <string>
#include <vector>

#include "chronoalign/align.hpp"
#include "chronoalign/time.hpp"

namespace chronoalign {

// A contiguous run of anchored words, the fine-tuning unit. Spans run from
// the first word's start to the last word's end.
struct Chunk {
    std::int64_t chunk_id = 0;
    std::string source_id;
    Interval span;
    std::vector<AnchoredWord> words;
    // A single word longer than the partition limit becomes its own chunk
    // and is flagged rather than split.
    bool over_length = false;

    Millis duration() const { return span.duration(); }
    std::string text() const;  // space-joined tokens
};

struct ChunkStats {
    std::size_t total_chunks = 0;
    double total_duration_hours = 0.0;
    double mean_duration_s = 0.0;
    double min_duration_s = 0.0;
};

// Shift every span by +window_start, mapping window-local words onto the
// recording timeline.
std::vector<TimedWord> globalize(std::vector<TimedWord> words, Millis window_start);

// Greedy left-to-right partition: a word joins the current chunk iff its
// end stays within max_dur of the chunk start, otherwise it opens a new
// chunk. Words must be sorted by span start.
std::vector<Chunk> greedy_partition(std::span<const AnchoredWord> words, Millis max_dur,
                                    std::string source_id = {});

// Keep chunks with min_dur <= duration <= max_dur (inclusive bounds),
// reassigning chunk ids densely from 0.
std::vector<Chunk> filter_chunks(std::vector<Chunk> chunks, Millis min_dur, Millis max_dur);

// Throws InputError on an empty corpus.
ChunkStats corpus_stats(std::span<const Chunk> chunks);

// Four-line summary table of a chunked corpus.
std::string format_stats(const ChunkStats& stats);

}  // namespace chronoalign
