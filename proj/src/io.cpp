#include "chronoalign/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chronoalign/error.hpp"
#include "json.hpp"

namespace chronoalign {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

void log_skip(const std::string& what) {
    std::cerr << "chronoalign: skipping " << what << "\n";
}

json parse_json(std::string_view text, const char* what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw ParseError(std::string(what) + ": malformed JSON");
    }
    return doc;
}

void check_schema(const json& doc, const char* what) {
    if (!doc.is_object()) {
        throw ParseError(std::string(what) + ": top-level value must be an object");
    }
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
        throw ParseError(std::string(what) + ": missing integer field 'schema_version'");
    }
    if (doc["schema_version"].get<int>() != kSchemaVersion) {
        throw ValidationError(std::string(what) + ": unsupported schema_version " +
                              doc["schema_version"].dump());
    }
}

std::string get_string(const json& obj, const char* key, const char* what) {
    if (!obj.contains(key) || !obj[key].is_string()) {
        throw ParseError(std::string(what) + ": missing string field '" + key + "'");
    }
    return obj[key].get<std::string>();
}

double get_number(const json& obj, const char* key, const std::string& what) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw ParseError(what + ": missing numeric field '" + key + "'");
    }
    return obj[key].get<double>();
}

Millis get_time(const json& obj, const char* key, const std::string& what) {
    const double v = get_number(obj, key, what);
    try {
        return ms_from_seconds(v);
    } catch (const InputError& e) {
        throw ValidationError(what + ": field '" + key + "': " + e.what());
    }
}

void append_escaped(std::string& out, std::string_view s) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"':
                out += "\\\"";
                break;
            case '\\':
                out += "\\\\";
                break;
            case '\n':
                out += "\\n";
                break;
            case '\r':
                out += "\\r";
                break;
            case '\t':
                out += "\\t";
                break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

}  // namespace

std::string double_str(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::vector<TimedWord> WordsDocument::timed_words() const {
    std::vector<TimedWord> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        out.push_back({w.text, w.span});
    }
    return out;
}

std::vector<AnchoredWord> WordsDocument::anchored_words() const {
    std::vector<AnchoredWord> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        out.push_back({w.text, w.span, w.anchor.value_or(Anchor::direct)});
    }
    return out;
}

WordsDocument parse_words(std::string_view text, bool lenient) {
    const json doc = parse_json(text, "words document");
    check_schema(doc, "words document");
    WordsDocument out;
    out.audio_id = get_string(doc, "audio_id", "words document");
    if (!doc.contains("words") || !doc["words"].is_array()) {
        throw ParseError("words document: missing array field 'words'");
    }
    std::size_t index = 0;
    for (const auto& item : doc["words"]) {
        const std::string ctx = "words document: word[" + std::to_string(index) + "]";
        ++index;
        try {
            if (!item.is_object()) {
                throw ParseError(ctx + ": must be an object");
            }
            WordRecord rec;
            rec.text = get_string(item, "text", ctx.c_str());
            if (rec.text.empty()) {
                throw ValidationError(ctx + ": word text must be non-empty");
            }
            rec.span.start = get_time(item, "start_s", ctx);
            rec.span.end = get_time(item, "end_s", ctx);
            if (rec.span.start > rec.span.end) {
                throw ValidationError(ctx + ": violates start_s <= end_s");
            }
            if (item.contains("confidence")) {
                if (!item["confidence"].is_number()) {
                    throw ParseError(ctx + ": field 'confidence' must be numeric");
                }
                rec.confidence = item["confidence"].get<double>();
            }
            if (item.contains("anchor")) {
                if (!item["anchor"].is_string()) {
                    throw ParseError(ctx + ": field 'anchor' must be a string");
                }
                const auto a = anchor_from_name(item["anchor"].get<std::string>());
                if (!a) {
                    throw ValidationError(ctx + ": unknown anchor class '" +
                                          item["anchor"].get<std::string>() + "'");
                }
                rec.anchor = a;
            }
            if (!out.words.empty() && rec.span.start < out.words.back().span.start) {
                throw ValidationError(ctx + ": violates ordering by start_s");
            }
            out.words.push_back(std::move(rec));
        } catch (const Error& e) {
            if (!lenient) {
                throw;
            }
            log_skip(std::string(e.what()));
        }
    }
    return out;
}

std::string write_words(const WordsDocument& doc) {
    std::string out = "{\"schema_version\": 1, \"audio_id\": ";
    append_escaped(out, doc.audio_id);
    out += ", \"words\": [";
    for (std::size_t i = 0; i < doc.words.size(); ++i) {
        const auto& w = doc.words[i];
        out += i == 0 ? "\n" : ",\n";
        out += "  {\"text\": ";
        append_escaped(out, w.text);
        out += ", \"start_s\": " + seconds_str(w.span.start);
        out += ", \"end_s\": " + seconds_str(w.span.end);
        if (w.confidence) {
            out += ", \"confidence\": " + double_str(*w.confidence);
        }
        if (w.anchor) {
            out += ", \"anchor\": \"" + std::string(anchor_name(*w.anchor)) + "\"";
        }
        out += "}";
    }
    out += doc.words.empty() ? "]}\n" : "\n]}\n";
    return out;
}

FrameProbsDocument parse_frame_probs(std::string_view text, bool lenient) {
    const json doc = parse_json(text, "frame-probs document");
    check_schema(doc, "frame-probs document");
    FrameProbsDocument out;
    out.audio_id = get_string(doc, "audio_id", "frame-probs document");
    out.probs.frame_rate = get_number(doc, "frame_rate", "frame-probs document");
    if (!(out.probs.frame_rate > 0)) {
        throw ValidationError("frame-probs document: frame_rate must be positive");
    }
    out.probs.origin = get_time(doc, "origin_s", "frame-probs document");
    if (!doc.contains("probs") || !doc["probs"].is_array()) {
        throw ParseError("frame-probs document: missing array field 'probs'");
    }
    std::size_t index = 0;
    for (const auto& item : doc["probs"]) {
        const std::string ctx = "frame-probs document: probs[" + std::to_string(index) + "]";
        ++index;
        try {
            if (!item.is_number()) {
                throw ParseError(ctx + ": must be numeric");
            }
            const double p = item.get<double>();
            if (!(p >= 0.0 && p <= 1.0)) {
                throw ValidationError(ctx + ": violates probability range [0, 1]");
            }
            out.probs.probs.push_back(p);
        } catch (const Error& e) {
            if (!lenient) {
                throw;
            }
            log_skip(std::string(e.what()));
        }
    }
    return out;
}

std::string write_frame_probs(const FrameProbsDocument& doc) {
    std::string out = "{\"schema_version\": 1, \"audio_id\": ";
    append_escaped(out, doc.audio_id);
    out += ", \"frame_rate\": " + double_str(doc.probs.frame_rate);
    out += ", \"origin_s\": " + seconds_str(doc.probs.origin);
    out += ", \"probs\": [";
    for (std::size_t i = 0; i < doc.probs.probs.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += double_str(doc.probs.probs[i]);
    }
    out += "]}\n";
    return out;
}

namespace {

std::vector<Interval> parse_interval_array(const json& arr, const std::string& what,
                                           bool lenient) {
    std::vector<Interval> out;
    std::size_t index = 0;
    for (const auto& item : arr) {
        const std::string ctx = what + "[" + std::to_string(index) + "]";
        ++index;
        try {
            if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
                !item[1].is_number()) {
                throw ParseError(ctx + ": must be a [start, end] number pair");
            }
            Interval iv;
            try {
                iv.start = ms_from_seconds(item[0].get<double>());
                iv.end = ms_from_seconds(item[1].get<double>());
            } catch (const InputError& e) {
                throw ValidationError(ctx + ": " + e.what());
            }
            out.push_back(iv);
        } catch (const Error& e) {
            if (!lenient) {
                throw;
            }
            log_skip(std::string(e.what()));
        }
    }
    return out;
}

std::string interval_array_str(std::span<const Interval> intervals) {
    std::string out = "[";
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        out += i > 0 ? ",\n  " : "\n  ";
        out += "[" + seconds_str(intervals[i].start) + ", " + seconds_str(intervals[i].end) + "]";
    }
    if (!intervals.empty()) {
        out += "\n";
    }
    out += "]";
    return out;
}

}  // namespace

VadDocument parse_vad(std::string_view text, bool lenient) {
    const json doc = parse_json(text, "vad document");
    check_schema(doc, "vad document");
    VadDocument out;
    out.audio_id = get_string(doc, "audio_id", "vad document");
    if (!doc.contains("speech") || !doc["speech"].is_array()) {
        throw ParseError("vad document: missing array field 'speech'");
    }
    const auto intervals = parse_interval_array(doc["speech"], "vad document: speech", lenient);
    if (!lenient) {
        // Strict mode demands the canonical timeline form.
        Millis prev_end = -1;
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            if (intervals[i].empty()) {
                throw ValidationError("vad document: speech[" + std::to_string(i) +
                                      "] violates start < end");
            }
            if (intervals[i].start <= prev_end) {
                throw ValidationError(
                    "vad document: speech[" + std::to_string(i) +
                    "] violates sorted, disjoint, non-touching timeline ordering");
            }
            prev_end = intervals[i].end;
        }
    }
    out.speech = Timeline(intervals);
    return out;
}

std::string write_vad(const VadDocument& doc) {
    std::string out = "{\"schema_version\": 1, \"audio_id\": ";
    append_escaped(out, doc.audio_id);
    out += ", \"speech\": " + interval_array_str(doc.speech.intervals()) + "}\n";
    return out;
}

WindowsDocument parse_windows(std::string_view text, bool lenient) {
    const json doc = parse_json(text, "windows document");
    check_schema(doc, "windows document");
    WindowsDocument out;
    out.audio_id = get_string(doc, "audio_id", "windows document");
    if (!doc.contains("windows") || !doc["windows"].is_array()) {
        throw ParseError("windows document: missing array field 'windows'");
    }
    const auto raw = parse_interval_array(doc["windows"], "windows document: windows", lenient);
    Millis prev_start = -1;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        try {
            if (raw[i].empty()) {
                throw ValidationError("windows document: windows[" + std::to_string(i) +
                                      "] violates start < end");
            }
            if (raw[i].start < prev_start) {
                throw ValidationError("windows document: windows[" + std::to_string(i) +
                                      "] violates ordering by start");
            }
        } catch (const ValidationError& e) {
            if (!lenient) {
                throw;
            }
            log_skip(std::string(e.what()));
            continue;
        }
        prev_start = raw[i].start;
        out.windows.push_back(raw[i]);
    }
    return out;
}

std::string write_windows(const WindowsDocument& doc) {
    std::string out = "{\"schema_version\": 1, \"audio_id\": ";
    append_escaped(out, doc.audio_id);
    out += ", \"windows\": " + interval_array_str(doc.windows) + "}\n";
    return out;
}

EmbeddingsDocument parse_embeddings(std::string_view text, bool lenient) {
    const json doc = parse_json(text, "embeddings document");
    check_schema(doc, "embeddings document");
    EmbeddingsDocument out;
    out.audio_id = get_string(doc, "audio_id", "embeddings document");
    const double dim_raw = get_number(doc, "dim", "embeddings document");
    const auto dim = static_cast<std::size_t>(dim_raw);
    if (dim_raw <= 0 || static_cast<double>(dim) != dim_raw) {
        throw ValidationError("embeddings document: dim must be a positive integer");
    }
    if (!doc.contains("embeddings") || !doc["embeddings"].is_array()) {
        throw ParseError("embeddings document: missing array field 'embeddings'");
    }
    std::size_t index = 0;
    for (const auto& item : doc["embeddings"]) {
        const std::string ctx = "embeddings document: embeddings[" + std::to_string(index) + "]";
        ++index;
        try {
            if (!item.is_object()) {
                throw ParseError(ctx + ": must be an object");
            }
            Embedding emb;
            const double seg = get_number(item, "segment", ctx);
            emb.segment_ref = static_cast<std::int64_t>(seg);
            if (seg < 0 || static_cast<double>(emb.segment_ref) != seg) {
                throw ValidationError(ctx + ": segment must be a non-negative integer");
            }
            if (!item.contains("vector") || !item["vector"].is_array()) {
                throw ParseError(ctx + ": missing array field 'vector'");
            }
            for (const auto& x : item["vector"]) {
                if (!x.is_number()) {
                    throw ParseError(ctx + ": vector entries must be numeric");
                }
                emb.vector.push_back(x.get<double>());
            }
            if (emb.vector.size() != dim) {
                throw ValidationError(ctx + ": violates shared dimension " + std::to_string(dim));
            }
            out.embeddings.push_back(std::move(emb));
        } catch (const Error& e) {
            if (!lenient) {
                throw;
            }
            log_skip(std::string(e.what()));
        }
    }
    return out;
}

std::string write_embeddings(const EmbeddingsDocument& doc) {
    const std::size_t dim = doc.embeddings.empty() ? 0 : doc.embeddings.front().vector.size();
    std::string out = "{\"schema_version\": 1, \"audio_id\": ";
    append_escaped(out, doc.audio_id);
    out += ", \"dim\": " + std::to_string(dim);
    out += ", \"embeddings\": [";
    for (std::size_t i = 0; i < doc.embeddings.size(); ++i) {
        const auto& e = doc.embeddings[i];
        out += i == 0 ? "\n" : ",\n";
        out += "  {\"segment\": " + std::to_string(e.segment_ref) + ", \"vector\": [";
        for (std::size_t k = 0; k < e.vector.size(); ++k) {
            if (k > 0) {
                out += ", ";
            }
            out += double_str(e.vector[k]);
        }
        out += "]}";
    }
    out += doc.embeddings.empty() ? "]}\n" : "\n]}\n";
    return out;
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
            ++i;
        }
        if (i > start) {
            fields.emplace_back(line.substr(start, i - start));
        }
    }
    return fields;
}

}  // namespace

std::map<std::string, Diarization> read_rttm(std::string_view text, bool lenient) {
    std::map<std::string, std::vector<SpeakerSegment>> by_file;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line =
            text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        const std::string ctx = "rttm line " + std::to_string(line_no);
        try {
            const auto fields = split_ws(line);
            if (fields.size() != 10) {
                throw ParseError(ctx + ": expected 10 fields, got " +
                                 std::to_string(fields.size()));
            }
            if (fields[0] != "SPEAKER") {
                throw ParseError(ctx + ": field 1 must be SPEAKER, got '" + fields[0] + "'");
            }
            Millis tbeg = 0;
            Millis tdur = 0;
            try {
                tbeg = parse_seconds_str(fields[3]);
                tdur = parse_seconds_str(fields[4]);
            } catch (const ParseError& e) {
                throw ParseError(ctx + ": " + e.what());
            }
            if (tdur <= 0) {
                throw ValidationError(ctx + ": violates tdur > 0");
            }
            by_file[fields[1]].push_back({{tbeg, tbeg + tdur}, fields[7]});
        } catch (const Error& e) {
            if (!lenient) {
                throw;
            }
            log_skip(std::string(e.what()));
        }
    }
    std::map<std::string, Diarization> out;
    for (auto& [file_id, segments] : by_file) {
        out.emplace(file_id, Diarization(std::move(segments)));
    }
    return out;
}

std::string write_rttm(const Diarization& d, const std::string& file_id) {
    if (file_id.find_first_of(" \t\n") != std::string::npos || file_id.empty()) {
        throw ValidationError("rttm file id must be non-empty without whitespace");
    }
    std::string out;
    for (const auto& s : d.segments()) {
        if (s.speaker.find_first_of(" \t\n") != std::string::npos) {
            throw ValidationError("rttm speaker label must not contain whitespace: '" +
                                  s.speaker + "'");
        }
        out += "SPEAKER " + file_id + " 1 " + seconds_str(s.span.start) + " " +
               seconds_str(s.span.duration()) + " <NA> <NA> " + s.speaker + " <NA> <NA>\n";
    }
    return out;
}

Diarization read_annotation_csv(std::string_view text, bool lenient) {
    std::vector<SpeakerSegment> segments;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool saw_header = false;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line =
            text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        if (!saw_header) {
            if (line != "start_time,end_time,speaker_id") {
                throw ParseError("annotation csv line 1: expected header "
                                 "'start_time,end_time,speaker_id', got '" +
                                 std::string(line) + "'");
            }
            saw_header = true;
            continue;
        }
        const std::string ctx = "annotation csv line " + std::to_string(line_no);
        try {
            const std::size_t c1 = line.find(',');
            const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
            if (c2 == std::string_view::npos ||
                line.find(',', c2 + 1) != std::string_view::npos) {
                throw ParseError(ctx + ": expected 3 comma-separated fields");
            }
            Millis t0 = 0;
            Millis t1 = 0;
            try {
                t0 = parse_seconds_str(line.substr(0, c1));
                t1 = parse_seconds_str(line.substr(c1 + 1, c2 - c1 - 1));
            } catch (const ParseError& e) {
                throw ParseError(ctx + ": " + e.what());
            }
            const std::string speaker(line.substr(c2 + 1));
            if (speaker.empty()) {
                throw ValidationError(ctx + ": speaker_id must be non-empty");
            }
            if (t0 >= t1) {
                throw ValidationError(ctx + ": violates start_time < end_time");
            }
            segments.push_back({{t0, t1}, speaker});
        } catch (const Error& e) {
            if (!lenient) {
                throw;
            }
            log_skip(std::string(e.what()));
        }
    }
    if (!saw_header) {
        throw ParseError("annotation csv: missing header 'start_time,end_time,speaker_id'");
    }
    return Diarization(std::move(segments));
}

std::string write_annotation_csv(const Diarization& d) {
    std::string out = "start_time,end_time,speaker_id\n";
    for (const auto& s : d.segments()) {
        if (s.speaker.find_first_of(",\n\r") != std::string::npos) {
            throw ValidationError("csv speaker label must not contain commas or newlines: '" +
                                  s.speaker + "'");
        }
        out += seconds_str(s.span.start) + "," + seconds_str(s.span.end) + "," + s.speaker + "\n";
    }
    return out;
}

std::vector<ManifestRecord> parse_manifest(std::string_view text, bool lenient) {
    std::vector<ManifestRecord> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line =
            text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        const std::string ctx = "manifest line " + std::to_string(line_no);
        try {
            const json rec = parse_json(line, ctx.c_str());
            if (!rec.is_object()) {
                throw ParseError(ctx + ": must be a JSON object");
            }
            ManifestRecord r;
            const double id = get_number(rec, "chunk_id", ctx);
            r.chunk_id = static_cast<std::int64_t>(id);
            if (id < 0 || static_cast<double>(r.chunk_id) != id) {
                throw ValidationError(ctx + ": chunk_id must be a non-negative integer");
            }
            r.source_id = get_string(rec, "source_id", ctx.c_str());
            r.span.start = get_time(rec, "start_s", ctx);
            r.span.end = get_time(rec, "end_s", ctx);
            if (r.span.start > r.span.end) {
                throw ValidationError(ctx + ": violates start_s <= end_s");
            }
            const Millis dur = get_time(rec, "duration_s", ctx);
            if (std::abs(dur - r.span.duration()) > 1) {
                throw ValidationError(ctx + ": violates duration_s == end_s - start_s (1 ms)");
            }
            r.text = get_string(rec, "text", ctx.c_str());
            if (!out.empty() && std::tie(r.source_id, r.span.start) <
                                    std::tie(out.back().source_id, out.back().span.start)) {
                throw ValidationError(ctx + ": violates ordering by (source_id, start_s)");
            }
            out.push_back(std::move(r));
        } catch (const Error& e) {
            if (!lenient) {
                throw;
            }
            log_skip(std::string(e.what()));
        }
    }
    return out;
}

std::string write_manifest(std::span<const ManifestRecord> records) {
    std::vector<const ManifestRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& r : records) {
        sorted.push_back(&r);
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        return std::tie(a->source_id, a->span.start) < std::tie(b->source_id, b->span.start);
    });
    std::string out;
    for (const auto* r : sorted) {
        out += "{\"chunk_id\": " + std::to_string(r->chunk_id) + ", \"source_id\": ";
        append_escaped(out, r->source_id);
        out += ", \"start_s\": " + seconds_str(r->span.start);
        out += ", \"end_s\": " + seconds_str(r->span.end);
        out += ", \"duration_s\": " + seconds_str(r->span.duration());
        out += ", \"text\": ";
        append_escaped(out, r->text);
        out += "}\n";
    }
    return out;
}

std::vector<ManifestRecord> manifest_from_chunks(std::span<const Chunk> chunks) {
    std::vector<ManifestRecord> out;
    out.reserve(chunks.size());
    for (const auto& c : chunks) {
        out.push_back({c.chunk_id, c.source_id, c.span, c.text()});
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open file for writing: " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= content.size()) {
        const std::size_t nl = content.find('\n', start);
        std::string line =
            content.substr(start, nl == std::string::npos ? content.size() - start : nl - start);
        start = nl == std::string::npos ? content.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            lines.push_back(std::move(line));
        }
    }
    return lines;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(static_cast<std::size_t>(len) * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

}  // namespace chronoalign
