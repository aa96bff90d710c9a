#include <random>

#include "chronoalign/error.hpp"
#include "chronoalign/io.hpp"
#include "doctest.h"

using namespace chronoalign;

namespace {

SpeakerSegment seg(Millis start, Millis end, const char* speaker) {
    return {{start, end}, speaker};
}

}  // namespace

TEST_CASE("words document round-trips byte-identically") {
    WordsDocument doc;
    doc.audio_id = "rec1";
    doc.words.push_back({"ami", {0, 400}, 0.93, Anchor::direct});
    doc.words.push_back({"বাংলা", {500, 900}, std::nullopt, std::nullopt});
    const std::string once = write_words(doc);
    const WordsDocument parsed = parse_words(once);
    CHECK(parsed == doc);
    CHECK(write_words(parsed) == once);
}

TEST_CASE("words document validation") {
    CHECK_THROWS_AS(parse_words("not json"), ParseError);
    CHECK_THROWS_AS(parse_words("{}"), ParseError);
    CHECK_THROWS_AS(parse_words(R"({"schema_version": 2, "audio_id": "x", "words": []})"),
                    ValidationError);
    // out-of-order words violate the ordering invariant
    const char* unordered = R"({"schema_version": 1, "audio_id": "x", "words": [
        {"text": "b", "start_s": 5.0, "end_s": 6.0},
        {"text": "a", "start_s": 0.0, "end_s": 1.0}]})";
    CHECK_THROWS_AS(parse_words(unordered), ValidationError);
    // lenient mode keeps the orderly prefix instead
    CHECK(parse_words(unordered, true).words.size() == 1);
    const char* inverted = R"({"schema_version": 1, "audio_id": "x", "words": [
        {"text": "a", "start_s": 2.0, "end_s": 1.0}]})";
    CHECK_THROWS_AS(parse_words(inverted), ValidationError);
    const char* negative = R"({"schema_version": 1, "audio_id": "x", "words": [
        {"text": "a", "start_s": -1.0, "end_s": 1.0}]})";
    CHECK_THROWS_AS(parse_words(negative), ValidationError);
}

TEST_CASE("frame-probs document round-trip and range check") {
    FrameProbsDocument doc;
    doc.audio_id = "rec1";
    doc.probs.frame_rate = 100.0;
    doc.probs.origin = 250;
    doc.probs.probs = {0.0, 0.25, 0.5, 1.0};
    const std::string text = write_frame_probs(doc);
    const FrameProbsDocument parsed = parse_frame_probs(text);
    CHECK(parsed.audio_id == doc.audio_id);
    CHECK(parsed.probs.frame_rate == doc.probs.frame_rate);
    CHECK(parsed.probs.origin == doc.probs.origin);
    CHECK(parsed.probs.probs == doc.probs.probs);
    CHECK(write_frame_probs(parsed) == text);

    const char* bad = R"({"schema_version": 1, "audio_id": "x", "frame_rate": 100,
                          "origin_s": 0, "probs": [0.5, 1.2]})";
    CHECK_THROWS_AS(parse_frame_probs(bad), ValidationError);
    CHECK(parse_frame_probs(bad, true).probs.probs.size() == 1);
    const char* bad_rate = R"({"schema_version": 1, "audio_id": "x", "frame_rate": 0,
                               "origin_s": 0, "probs": []})";
    CHECK_THROWS_AS(parse_frame_probs(bad_rate), ValidationError);
}

TEST_CASE("vad document demands canonical timelines in strict mode") {
    VadDocument doc{"rec1", Timeline({{0, 2500}, {3000, 4000}})};
    const std::string text = write_vad(doc);
    CHECK(parse_vad(text) == doc);

    const char* touching =
        R"({"schema_version": 1, "audio_id": "x", "speech": [[0, 1.0], [1.0, 2.0]]})";
    CHECK_THROWS_AS(parse_vad(touching), ValidationError);
    CHECK(parse_vad(touching, true).speech == Timeline({{0, 2000}}));
    const char* unsorted =
        R"({"schema_version": 1, "audio_id": "x", "speech": [[5, 6], [1, 2]]})";
    CHECK_THROWS_AS(parse_vad(unsorted), ValidationError);
    const char* empty_iv =
        R"({"schema_version": 1, "audio_id": "x", "speech": [[1, 1]]})";
    CHECK_THROWS_AS(parse_vad(empty_iv), ValidationError);
}

TEST_CASE("windows document keeps overlapping windows") {
    WindowsDocument doc{"rec1", {{0, 30'000}, {29'000, 50'000}}};
    const std::string text = write_windows(doc);
    CHECK(parse_windows(text) == doc);
    const char* unsorted =
        R"({"schema_version": 1, "audio_id": "x", "windows": [[5, 6], [1, 2]]})";
    CHECK_THROWS_AS(parse_windows(unsorted), ValidationError);
    CHECK(parse_windows(unsorted, true).windows.size() == 1);
}

TEST_CASE("embeddings document round-trip and dimension checks") {
    EmbeddingsDocument doc;
    doc.audio_id = "rec1";
    doc.embeddings.push_back({{0.5, -1.25, 3.0}, 0});
    doc.embeddings.push_back({{1.0, 2.0, 3.5}, 1});
    const std::string text = write_embeddings(doc);
    const EmbeddingsDocument parsed = parse_embeddings(text);
    REQUIRE(parsed.embeddings.size() == 2);
    CHECK(parsed.embeddings[0].vector == doc.embeddings[0].vector);
    CHECK(parsed.embeddings[1].segment_ref == 1);
    CHECK(write_embeddings(parsed) == text);

    const char* mismatch = R"({"schema_version": 1, "audio_id": "x", "dim": 2,
        "embeddings": [{"segment": 0, "vector": [1.0, 2.0, 3.0]}]})";
    CHECK_THROWS_AS(parse_embeddings(mismatch), ValidationError);
}

TEST_CASE("rttm line format is exact") {
    const Diarization d({seg(0, 5000, "A")});
    CHECK(write_rttm(d, "f") == "SPEAKER f 1 0.000 5.000 <NA> <NA> A <NA> <NA>\n");
    CHECK(write_rttm(Diarization(), "f").empty());
    CHECK_THROWS_AS(write_rttm(d, "bad id"), ValidationError);
    CHECK_THROWS_AS(write_rttm(Diarization({{{0, 1000}, "two words"}}), "f"), ValidationError);
}

TEST_CASE("rttm parsing is strict about field count and values") {
    const auto parsed = read_rttm("SPEAKER f 1 0.000 5.000 <NA> <NA> A <NA> <NA>\n");
    REQUIRE(parsed.size() == 1);
    CHECK(parsed.at("f") == Diarization({seg(0, 5000, "A")}));

    CHECK_THROWS_AS(read_rttm("SPEAKER f 1 0.000 5.000 <NA> <NA> A <NA>\n"), ParseError);
    CHECK_THROWS_AS(read_rttm("SPKR f 1 0.000 5.000 <NA> <NA> A <NA> <NA>\n"), ParseError);
    CHECK_THROWS_AS(read_rttm("SPEAKER f 1 0.000 0.000 <NA> <NA> A <NA> <NA>\n"),
                    ValidationError);
    CHECK_THROWS_AS(read_rttm("SPEAKER f 1 x 5.000 <NA> <NA> A <NA> <NA>\n"), ParseError);
    // lenient mode skips the offending line
    const auto lenient = read_rttm(
        "SPEAKER f 1 0.000 5.000 <NA> <NA> A <NA> <NA>\n"
        "SPEAKER f 1 bad 1.000 <NA> <NA> B <NA> <NA>\n",
        true);
    CHECK(lenient.at("f").size() == 1);
    CHECK(read_rttm("").empty());
}

TEST_CASE("rttm round-trips at millisecond resolution") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<Millis> point(0, 100'000);
    std::uniform_int_distribution<Millis> dur(1, 30'000);
    std::uniform_int_distribution<int> spk(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<SpeakerSegment> segments;
        for (int i = 0; i < 6; ++i) {
            const Millis start = point(rng);
            segments.push_back({{start, start + dur(rng)}, "spk" + std::to_string(spk(rng))});
        }
        const Diarization d(std::move(segments));
        const auto parsed = read_rttm(write_rttm(d, "file1"));
        REQUIRE(parsed.size() == 1);
        CHECK(parsed.at("file1") == d);
    }
}

TEST_CASE("annotation csv round-trip and header enforcement") {
    const Diarization d({seg(0, 2500, "spk1"), seg(3000, 5000, "spk2")});
    const std::string text = write_annotation_csv(d);
    CHECK(text.substr(0, 31) == "start_time,end_time,speaker_id\n");
    CHECK(read_annotation_csv(text) == d);

    CHECK(read_annotation_csv("start_time,end_time,speaker_id\n0.0,2.5,spk1\n") ==
          Diarization({seg(0, 2500, "spk1")}));
    CHECK_THROWS_AS(read_annotation_csv("begin,end,speaker\n0,1,a\n"), ParseError);
    CHECK_THROWS_AS(read_annotation_csv(""), ParseError);
    // start >= end rejected
    CHECK_THROWS_AS(read_annotation_csv("start_time,end_time,speaker_id\n2.0,2.0,a\n"),
                    ValidationError);
    CHECK_THROWS_AS(read_annotation_csv("start_time,end_time,speaker_id\n1.0\n"), ParseError);
    const Diarization lenient =
        read_annotation_csv("start_time,end_time,speaker_id\n2.0,1.0,a\n0.0,1.0,b\n", true);
    CHECK(lenient.size() == 1);
}

TEST_CASE("manifest records validate duration and ordering") {
    const std::vector<ManifestRecord> records = {
        {0, "rec1", {0, 27'500}, "ami valo"},
        {1, "rec1", {30'000, 55'000}, "more words"},
        {2, "rec2", {0, 21'000}, "other file"},
    };
    const std::string text = write_manifest(records);
    CHECK(parse_manifest(text) == records);

    const char* bad_duration =
        R"({"chunk_id": 0, "source_id": "r", "start_s": 0.0, "end_s": 5.0, "duration_s": 4.0, "text": "x"})";
    CHECK_THROWS_AS(parse_manifest(bad_duration), ValidationError);
    CHECK(parse_manifest(bad_duration, true).empty());

    const std::string unordered =
        std::string(
            R"({"chunk_id": 0, "source_id": "r", "start_s": 5.0, "end_s": 6.0, "duration_s": 1.0, "text": "x"})") +
        "\n" +
        R"({"chunk_id": 1, "source_id": "r", "start_s": 0.0, "end_s": 1.0, "duration_s": 1.0, "text": "y"})" +
        "\n";
    CHECK_THROWS_AS(parse_manifest(unordered), ValidationError);
    // the writer sorts by (source_id, start), so round-trips stay legal
    auto shuffled = records;
    std::swap(shuffled[0], shuffled[2]);
    CHECK(parse_manifest(write_manifest(shuffled)) == records);
}

TEST_CASE("json string escaping survives round trips") {
    WordsDocument doc;
    doc.audio_id = "id with \"quotes\" and \\slashes\\";
    doc.words.push_back({"tok\"en", {0, 100}, std::nullopt, std::nullopt});
    const WordsDocument parsed = parse_words(write_words(doc));
    CHECK(parsed == doc);
}

TEST_CASE("sha256 matches the known empty-string vector") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("atomic write replaces the target file") {
    const auto dir = std::filesystem::temp_directory_path() / "chronoalign_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.txt";
    write_file_atomic(path, "first");
    CHECK(read_file(path) == "first");
    write_file_atomic(path, "second");
    CHECK(read_file(path) == "second");
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(read_file(dir / "missing.txt"), ParseError);
}
