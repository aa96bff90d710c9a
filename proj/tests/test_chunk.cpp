#include <random>

#include "chronoalign/chunk.hpp"
#include "chronoalign/error.hpp"
#include "doctest.h"

using namespace chronoalign;

namespace {

AnchoredWord aw(const char* text, Millis start, Millis end) {
    return {text, {start, end}, Anchor::direct};
}

std::vector<AnchoredWord> random_words(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<Millis> dur(100, 2000);
    std::uniform_int_distribution<Millis> gap(0, 800);
    std::vector<AnchoredWord> words;
    Millis t = 0;
    for (int i = 0; i < n; ++i) {
        const Millis d = dur(rng);
        words.push_back({"w" + std::to_string(i), {t, t + d}, Anchor::direct});
        t += d + gap(rng);
    }
    return words;
}

}  // namespace

TEST_CASE("globalize shifts spans by the window start") {
    const auto shifted = globalize({{"a", {0, 1000}}}, 28'000);
    REQUIRE(shifted.size() == 1);
    CHECK(shifted[0].span == Interval{28'000, 29'000});

    const std::vector<TimedWord> words = {{"a", {100, 200}}, {"b", {300, 400}}};
    CHECK(globalize(words, 0) == words);
    CHECK(globalize({}, 5000).empty());
    CHECK_THROWS_AS(globalize(words, -1), InputError);
}

TEST_CASE("greedy_partition breaks when the next word would overflow") {
    const std::vector<AnchoredWord> words = {aw("w1", 0, 10'000), aw("w2", 12'000, 20'000),
                                             aw("w3", 22'000, 27'500), aw("w4", 27'800, 29'000)};
    const auto chunks = greedy_partition(words, 28'000, "rec");
    REQUIRE(chunks.size() == 2);
    CHECK(chunks[0].words.size() == 3);
    CHECK(chunks[0].span == Interval{0, 27'500});
    CHECK(chunks[1].words.size() == 1);
    CHECK(chunks[1].span == Interval{27'800, 29'000});
    CHECK(chunks[0].text() == "w1 w2 w3");
    CHECK(chunks[0].source_id == "rec");
    CHECK(chunks[1].chunk_id == 1);
}

TEST_CASE("greedy_partition singleton and degenerate inputs") {
    const auto one = greedy_partition(std::vector<AnchoredWord>{aw("a", 0, 5000)}, 28'000, "");
    REQUIRE(one.size() == 1);
    CHECK(one[0].span == Interval{0, 5000});
    CHECK_FALSE(one[0].over_length);

    const auto big = greedy_partition(std::vector<AnchoredWord>{aw("a", 0, 30'000)}, 28'000, "");
    REQUIRE(big.size() == 1);
    CHECK(big[0].over_length);

    CHECK(greedy_partition({}, 28'000, "").empty());
    CHECK_THROWS_AS(greedy_partition({}, 0, ""), ConfigError);
    const std::vector<AnchoredWord> unordered = {aw("a", 5000, 6000), aw("b", 0, 1000)};
    CHECK_THROWS_AS(greedy_partition(unordered, 28'000, ""), InputError);
}

TEST_CASE("an over-length word never absorbs its neighbors") {
    const std::vector<AnchoredWord> words = {aw("big", 0, 30'000), aw("tail", 30'000, 30'500)};
    const auto chunks = greedy_partition(words, 28'000, "");
    REQUIRE(chunks.size() == 2);
    CHECK(chunks[0].over_length);
    CHECK_FALSE(chunks[1].over_length);
}

TEST_CASE("filter_chunks keeps the inclusive duration band") {
    std::vector<Chunk> chunks =
        greedy_partition(std::vector<AnchoredWord>{aw("a", 0, 27'500), aw("b", 40'000, 41'200)},
                         28'000, "rec");
    REQUIRE(chunks.size() == 2);
    const auto kept = filter_chunks(chunks, 20'000, 28'000);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].duration() == 27'500);
    CHECK(kept[0].chunk_id == 0);  // ids reassigned densely

    // inclusive bounds on both ends
    auto exact_min = greedy_partition(std::vector<AnchoredWord>{aw("a", 0, 20'000)}, 28'000, "");
    CHECK(filter_chunks(exact_min, 20'000, 28'000).size() == 1);
    auto exact_max = greedy_partition(std::vector<AnchoredWord>{aw("a", 0, 28'000)}, 28'000, "");
    CHECK(filter_chunks(exact_max, 20'000, 28'000).size() == 1);

    CHECK(filter_chunks(chunks, 0, 1'000'000'000).size() == 2);  // identity band
    CHECK_THROWS_AS(filter_chunks(chunks, 28'000, 20'000), ConfigError);
}

TEST_CASE("corpus_stats summarizes counts and durations") {
    const auto one = greedy_partition(std::vector<AnchoredWord>{aw("a", 0, 25'000)}, 28'000, "");
    const ChunkStats s1 = corpus_stats(one);
    CHECK(s1.total_chunks == 1);
    CHECK(s1.total_duration_hours == doctest::Approx(25.0 / 3600.0));
    CHECK(s1.mean_duration_s == doctest::Approx(25.0));
    CHECK(s1.min_duration_s == doctest::Approx(25.0));

    const std::vector<AnchoredWord> two = {aw("a", 0, 20'000), aw("b", 40'000, 68'000)};
    const ChunkStats s2 = corpus_stats(greedy_partition(two, 28'000, ""));
    CHECK(s2.total_chunks == 2);
    CHECK(s2.mean_duration_s == doctest::Approx(24.0));
    CHECK(s2.min_duration_s == doctest::Approx(20.0));

    CHECK_THROWS_AS(corpus_stats({}), InputError);
}

TEST_CASE("stats formatting matches the summary-table layout") {
    const ChunkStats stats{4553, 33.59, 26.56, 20.0};
    const std::string table = format_stats(stats);
    CHECK(table.find("Total chunks            4,553") != std::string::npos);
    CHECK(table.find("Total duration          33.59 hours") != std::string::npos);
    CHECK(table.find("Average chunk duration  26.56 seconds") != std::string::npos);
    CHECK(table.find("Shortest chunk          20.00 seconds") != std::string::npos);
}

TEST_CASE("partition properties on random word streams") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> len(1, 200);
    for (int trial = 0; trial < 100; ++trial) {
        const auto words = random_words(rng, len(rng));
        const auto chunks = greedy_partition(words, 28'000, "r");

        // concatenating chunk word lists reproduces the input
        std::vector<AnchoredWord> rebuilt;
        for (const auto& c : chunks) {
            REQUIRE_FALSE(c.words.empty());
            CHECK(c.span.start == c.words.front().span.start);
            CHECK(c.span.end == c.words.back().span.end);
            if (!c.over_length) {
                CHECK(c.duration() <= 28'000);
            }
            rebuilt.insert(rebuilt.end(), c.words.begin(), c.words.end());
        }
        CHECK(rebuilt == words);

        // filtering is idempotent and stays within the band
        const auto kept = filter_chunks(chunks, 20'000, 28'000);
        for (const auto& c : kept) {
            CHECK(c.duration() >= 20'000);
            CHECK(c.duration() <= 28'000);
        }
        auto copy = kept;
        for (std::size_t i = 0; i < copy.size(); ++i) {
            copy[i].chunk_id = static_cast<std::int64_t>(i);
        }
        const auto again = filter_chunks(kept, 20'000, 28'000);
        REQUIRE(again.size() == copy.size());
        for (std::size_t i = 0; i < again.size(); ++i) {
            CHECK(again[i].chunk_id == copy[i].chunk_id);
            CHECK(again[i].span == copy[i].span);
        }
    }
}
