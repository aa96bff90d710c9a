#include <random>

#include "chronoalign/error.hpp"
#include "chronoalign/text.hpp"
#include "doctest.h"

using namespace chronoalign;

TEST_CASE("canonical composition composes Bengali vowel signs") {
    // U+0995 KA followed by U+09C7 + U+09BE composes to KA + U+09CB.
    const std::string decomposed = "\xe0\xa6\x95\xe0\xa7\x87\xe0\xa6\xbe";
    const std::string composed = "\xe0\xa6\x95\xe0\xa7\x8b";
    CHECK(nfc(decomposed) == composed);
    CHECK(nfc(composed) == composed);
    CHECK(nfc("plain ascii") == "plain ascii");
}

TEST_CASE("normalize_tokens splits on unicode whitespace and composes") {
    CHECK(normalize_tokens("").empty());
    CHECK(normalize_tokens("   \t\n").empty());
    CHECK(normalize_tokens("ami  valo") == std::vector<std::string>{"ami", "valo"});
    // no-break space U+00A0 is a separator too
    CHECK(normalize_tokens("ami\xc2\xa0valo") == std::vector<std::string>{"ami", "valo"});
    const auto tokens = normalize_tokens("x \xe0\xa6\x95\xe0\xa7\x87\xe0\xa6\xbe y");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[1] == "\xe0\xa6\x95\xe0\xa7\x8b");
    CHECK_THROWS_AS(normalize_tokens("bad \xff byte"), InputError);
}

TEST_CASE("normalize_tokens is idempotent") {
    const std::vector<std::string> samples = {
        "ami valo achi", "  a  b\tc ", "\xe0\xa6\x95\xe0\xa7\x87\xe0\xa6\xbe mixed text"};
    for (const auto& s : samples) {
        const auto once = normalize_tokens(s);
        std::string joined;
        for (const auto& t : once) {
            if (!joined.empty()) {
                joined.push_back(' ');
            }
            joined += t;
        }
        CHECK(normalize_tokens(joined) == once);
    }
}

namespace {

std::vector<std::string> toks(std::initializer_list<const char*> list) {
    return {list.begin(), list.end()};
}

}  // namespace

TEST_CASE("collapse_repetitions squashes looping n-grams") {
    CHECK(collapse_repetitions(toks({"x", "x", "x", "x", "x"}), {1, 4}) == toks({"x"}));
    CHECK(collapse_repetitions(toks({"a", "b", "a", "b", "a", "b", "a", "b"}), {2, 4}) ==
          toks({"a", "b"}));
    CHECK(collapse_repetitions(toks({"a", "b", "a", "b", "a", "b"}), {5, 4}) ==
          toks({"a", "b", "a", "b", "a", "b"}));
    CHECK(collapse_repetitions({}, {5, 4}).empty());
    // longest-n-first: the 2-gram loop collapses as a unit, not word by word
    CHECK(collapse_repetitions(toks({"c", "a", "b", "a", "b", "a", "b", "a", "b", "d"}), {5, 4}) ==
          toks({"c", "a", "b", "d"}));
    CHECK_THROWS_AS(collapse_repetitions(toks({"x"}), {0, 4}), ConfigError);
    CHECK_THROWS_AS(collapse_repetitions(toks({"x"}), {5, 1}), ConfigError);
}

TEST_CASE("collapse_repetitions is idempotent and never grows") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> len(0, 40);
    std::uniform_int_distribution<int> letter(0, 2);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::string> tokens;
        const int n = len(rng);
        for (int k = 0; k < n; ++k) {
            tokens.push_back(std::string(1, static_cast<char>('a' + letter(rng))));
        }
        const auto once = collapse_repetitions(tokens, {3, 3});
        CHECK(once.size() <= tokens.size());
        CHECK(collapse_repetitions(once, {3, 3}) == once);
    }
}

TEST_CASE("apply_blacklist removes phrases case-insensitively") {
    const std::vector<std::string> phrases = {"Thanks for watching"};
    CHECK(apply_blacklist("ami Thanks for watching valo", phrases) == "ami valo");
    CHECK(apply_blacklist("ami THANKS FOR WATCHING valo", phrases) == "ami valo");
    CHECK(apply_blacklist("ami valo", phrases) == "ami valo");
    CHECK(apply_blacklist("", phrases) == "");
    // removal re-exposes a phrase split by an earlier removal
    CHECK(apply_blacklist("ThaThanks for watchingnks for watching", phrases) == "");
    // output never contains a blacklisted phrase
    const std::string cleaned =
        apply_blacklist("a Thanks for watching Thanks for watching b", phrases);
    CHECK(cleaned.find("Thanks for watching") == std::string::npos);
    CHECK(cleaned == "a b");
}
