#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chronoalign/align.hpp"
#include "chronoalign/chunk.hpp"
#include "chronoalign/diarization.hpp"
#include "chronoalign/time.hpp"
#include "chronoalign/vad.hpp"

// Readers and writers for every artifact boundary. All formats are
// structured text, round-trip losslessly at the 1 ms clock, and are
// written canonically (fixed field order, 3-decimal times) so identical
// inputs produce byte-identical files. Parsers reject rather than repair;
// the lenient flag instead logs offending rows to stderr and skips them.
namespace chronoalign {

struct WordRecord {
    std::string text;
    Interval span;
    std::optional<double> confidence;
    std::optional<Anchor> anchor;

    bool operator==(const WordRecord&) const = default;
};

struct WordsDocument {
    std::string audio_id;
    std::vector<WordRecord> words;  // ordered by span start

    std::vector<TimedWord> timed_words() const;
    std::vector<AnchoredWord> anchored_words() const;  // missing anchor -> direct
    bool operator==(const WordsDocument&) const = default;
};

WordsDocument parse_words(std::string_view text, bool lenient = false);
std::string write_words(const WordsDocument& doc);

struct FrameProbsDocument {
    std::string audio_id;
    FrameProbs probs;
};

FrameProbsDocument parse_frame_probs(std::string_view text, bool lenient = false);
std::string write_frame_probs(const FrameProbsDocument& doc);

struct VadDocument {
    std::string audio_id;
    Timeline speech;

    bool operator==(const VadDocument&) const = default;
};

VadDocument parse_vad(std::string_view text, bool lenient = false);
std::string write_vad(const VadDocument& doc);

struct WindowsDocument {
    std::string audio_id;
    std::vector<Interval> windows;  // ordered by start; may overlap

    bool operator==(const WindowsDocument&) const = default;
};

WindowsDocument parse_windows(std::string_view text, bool lenient = false);
std::string write_windows(const WindowsDocument& doc);

struct EmbeddingsDocument {
    std::string audio_id;
    std::vector<Embedding> embeddings;
};

EmbeddingsDocument parse_embeddings(std::string_view text, bool lenient = false);
std::string write_embeddings(const EmbeddingsDocument& doc);

// RTTM speaker lines: exactly 10 space-separated fields per line,
//   SPEAKER <file> 1 <tbeg> <tdur> <NA> <NA> <speaker> <NA> <NA>
// with 3-decimal times. One document may carry several file ids.
std::map<std::string, Diarization> read_rttm(std::string_view text, bool lenient = false);
std::string write_rttm(const Diarization& d, const std::string& file_id);

// Annotation CSV with the exact header start_time,end_time,speaker_id.
Diarization read_annotation_csv(std::string_view text, bool lenient = false);
std::string write_annotation_csv(const Diarization& d);

// Chunk manifest: one JSON record per line, ordered by (source_id, start).
struct ManifestRecord {
    std::int64_t chunk_id = 0;
    std::string source_id;
    Interval span;
    std::string text;

    Millis duration() const { return span.duration(); }
    bool operator==(const ManifestRecord&) const = default;
};

std::vector<ManifestRecord> parse_manifest(std::string_view text, bool lenient = false);
std::string write_manifest(std::span<const ManifestRecord> records);
std::vector<ManifestRecord> manifest_from_chunks(std::span<const Chunk> chunks);

// Plain-text helpers.
std::string read_file(const std::filesystem::path& path);
// Atomic write: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
// Non-empty lines of a text file (one blacklist phrase per line).
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Hex SHA-256 digests for run manifests.
std::string sha256_hex(std::string_view data);

// Shortest lossless decimal rendering of a double (probabilities,
// embedding coordinates).
std::string double_str(double value);

}  // namespace chronoalign
