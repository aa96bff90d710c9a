#include <random>

#include "chronoalign/error.hpp"
#include "chronoalign/time.hpp"
#include "doctest.h"

using namespace chronoalign;

namespace {

Timeline tl(std::vector<Interval> ivs) {
    return Timeline(std::move(ivs));
}

// Seeded random timeline over a small universe, for algebra properties.
Timeline random_timeline(std::mt19937_64& rng, Millis horizon = 20'000) {
    std::uniform_int_distribution<Millis> point(0, horizon);
    std::uniform_int_distribution<int> count(0, 6);
    std::vector<Interval> ivs;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        Millis a = point(rng);
        Millis b = point(rng);
        if (a > b) {
            std::swap(a, b);
        }
        ivs.push_back({a, b});
    }
    return Timeline(std::move(ivs));
}

}  // namespace

TEST_CASE("millisecond quantization rounds half up") {
    CHECK(ms_from_seconds(0.0) == 0);
    CHECK(ms_from_seconds(0.0004) == 0);
    CHECK(ms_from_seconds(0.0005) == 1);
    CHECK(ms_from_seconds(1.2344) == 1234);
    CHECK(ms_from_seconds(1.2345) == 1235);
    CHECK_THROWS_AS(ms_from_seconds(-1.0), InputError);
    CHECK_THROWS_AS(ms_from_seconds(std::nan("")), InputError);
}

TEST_CASE("seconds rendering and strict parsing are a fixed point") {
    CHECK(seconds_str(1234) == "1.234");
    CHECK(seconds_str(0) == "0.000");
    CHECK(seconds_str(3600000) == "3600.000");
    CHECK(parse_seconds_str("1.234") == 1234);
    CHECK(parse_seconds_str("5") == 5000);
    CHECK(parse_seconds_str("5.0") == 5000);
    CHECK(parse_seconds_str("0.1") == 100);
    // extra digits quantize round-half-up
    CHECK(parse_seconds_str("1.23449") == 1234);
    CHECK(parse_seconds_str("1.23450") == 1235);
    CHECK_THROWS_AS(parse_seconds_str(""), ParseError);
    CHECK_THROWS_AS(parse_seconds_str("-1.0"), ParseError);
    CHECK_THROWS_AS(parse_seconds_str("1.2x"), ParseError);
    CHECK_THROWS_AS(parse_seconds_str("abc"), ParseError);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Millis> point(0, 100'000'000);
    for (int i = 0; i < 500; ++i) {
        const Millis ms = point(rng);
        CHECK(parse_seconds_str(seconds_str(ms)) == ms);
    }
}

TEST_CASE("timeline normalizes to canonical form") {
    const Timeline t = tl({{5000, 6000}, {0, 2000}, {1000, 1500}, {3000, 3000}});
    REQUIRE(t.size() == 2);
    CHECK(t.intervals()[0] == Interval{0, 2000});
    CHECK(t.intervals()[1] == Interval{5000, 6000});
    CHECK_THROWS_AS(tl({{2000, 1000}}), InputError);
    CHECK_THROWS_AS(tl({{-1, 1000}}), InputError);
}

TEST_CASE("timeline union") {
    CHECK(timeline_union(tl({{0, 2000}}), Timeline()) == tl({{0, 2000}}));
    CHECK(timeline_union(tl({{0, 2000}, {5000, 6000}}), tl({{1000, 5000}})) == tl({{0, 6000}}));
    // touching intervals coalesce
    CHECK(timeline_union(tl({{0, 1000}}), tl({{1000, 2000}})) == tl({{0, 2000}}));
}

TEST_CASE("timeline intersection") {
    CHECK(timeline_intersect(tl({{0, 10000}}), tl({{0, 10000}})) == tl({{0, 10000}}));
    CHECK(timeline_intersect(tl({{1000, 5000}}), tl({{0, 3000}, {4000, 10000}})) ==
          tl({{1000, 3000}, {4000, 5000}}));
    CHECK(timeline_intersect(tl({{0, 2000}}), tl({{3000, 4000}})).empty());
}

TEST_CASE("timeline duration") {
    CHECK(timeline_duration(Timeline()) == 0);
    CHECK(timeline_duration(tl({{0, 2000}, {5000, 6000}})) == 3000);
    CHECK(timeline_duration(tl({{0, 0}})) == 0);
}

TEST_CASE("timeline subtraction") {
    CHECK(timeline_subtract(tl({{0, 10000}}), tl({{2000, 3000}})) ==
          tl({{0, 2000}, {3000, 10000}}));
    CHECK(timeline_subtract(tl({{0, 2000}}), tl({{0, 2000}})).empty());
    CHECK(timeline_subtract(tl({{0, 2000}}), Timeline()) == tl({{0, 2000}}));
}

TEST_CASE("timeline membership uses half-open intervals") {
    const Timeline t = tl({{1000, 2000}});
    CHECK(t.contains(1000));
    CHECK(t.contains(1999));
    CHECK_FALSE(t.contains(2000));
    CHECK(t.covers({1200, 1800}));
    CHECK(t.covers({1000, 2000}));
    CHECK_FALSE(t.covers({1500, 2500}));
}

TEST_CASE("timeline algebra properties on random inputs") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        const Timeline a = random_timeline(rng);
        const Timeline b = random_timeline(rng);
        const Timeline c = random_timeline(rng);

        CHECK(timeline_union(a, b) == timeline_union(b, a));
        CHECK(timeline_intersect(a, b) == timeline_intersect(b, a));
        CHECK(timeline_union(a, timeline_union(b, c)) ==
              timeline_union(timeline_union(a, b), c));
        CHECK(timeline_intersect(a, timeline_intersect(b, c)) ==
              timeline_intersect(timeline_intersect(a, b), c));
        CHECK(timeline_union(a, a) == a);
        CHECK(timeline_intersect(a, a) == a);
        CHECK(timeline_intersect(a, timeline_union(a, b)) == a);

        // duration(A u B) + duration(A n B) == duration(A) + duration(B)
        CHECK(timeline_union(a, b).duration() + timeline_intersect(a, b).duration() ==
              a.duration() + b.duration());

        // subtraction is the complement within the union
        CHECK(timeline_union(timeline_subtract(a, b), timeline_intersect(a, b)) == a);

        // serialize to 3-decimal text and reparse: identical
        std::vector<Interval> reparsed;
        for (const auto& iv : a.intervals()) {
            reparsed.push_back(
                {parse_seconds_str(seconds_str(iv.start)), parse_seconds_str(seconds_str(iv.end))});
        }
        CHECK(Timeline(reparsed) == a);
    }
}

TEST_CASE("time map maps concatenated speech onto the original clock") {
    const TimeMap m(tl({{2000, 5000}, {8000, 10000}}));
    CHECK(m.total_duration() == 5000);
    CHECK(m.to_original(0) == 2000);
    CHECK(m.to_original(3500) == 8500);
    CHECK_THROWS_AS(m.to_original(5000), InputError);  // exclusive domain end
    CHECK_THROWS_AS(m.to_original(-1), InputError);

    CHECK(m.to_concat(2000) == 0);
    CHECK(m.to_concat(8500) == 3500);
    CHECK_THROWS_AS(m.to_concat(6000), InputError);   // inside the silence gap
    CHECK_THROWS_AS(m.to_concat(10000), InputError);  // half-open end
}

TEST_CASE("time map round trip is the identity and strictly increasing") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        Timeline speech = random_timeline(rng);
        if (speech.empty()) {
            continue;
        }
        const TimeMap m(speech);
        Millis prev = -1;
        for (Millis t = 0; t < m.total_duration(); t += 97) {
            const Millis orig = m.to_original(t);
            CHECK(orig > prev);
            prev = orig;
            CHECK(m.to_concat(orig) == t);
        }
    }
}
