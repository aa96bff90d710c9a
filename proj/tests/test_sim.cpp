#include "chronoalign/error.hpp"
#include "chronoalign/metrics.hpp"
#include "chronoalign/sim.hpp"
#include "chronoalign/vad.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chronoalign;

namespace {

SimConfig base_config(std::uint64_t seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.n_speakers = 3;
    cfg.total_duration = 60'000;
    return cfg;
}

}  // namespace

TEST_CASE("identical seeds reproduce identical corpora") {
    const SimConfig cfg = base_config(123);
    const Truth a = generate_truth(cfg);
    const Truth b = generate_truth(cfg);
    CHECK(a.diarization == b.diarization);
    CHECK(a.words == b.words);
    CHECK(a.probs.probs == b.probs.probs);
    const Truth c = generate_truth(base_config(124));
    CHECK(a.words != c.words);
}

TEST_CASE("generated words lie inside their speaker segments") {
    const Truth truth = generate_truth(base_config(5));
    REQUIRE_FALSE(truth.words.empty());
    const Timeline speech = truth.speech();
    for (const auto& w : truth.words) {
        CHECK(speech.covers(w.span));
    }
    // single-speaker config produces only that speaker
    SimConfig solo = base_config(6);
    solo.n_speakers = 1;
    const Truth one = generate_truth(solo);
    CHECK(one.diarization.speakers() == std::vector<std::string>{"spk0"});
}

TEST_CASE("hysteresis on generated probabilities reproduces the truth timeline") {
    for (const double noise : {0.0, 0.2}) {
        SimConfig cfg = base_config(31);
        cfg.prob_noise = noise;
        const Truth truth = generate_truth(cfg);
        const Timeline segmented = hysteresis_segment(truth.probs, VadConfig{0.4, 0.25, 0, 0});
        CHECK(segmented == truth.speech());
    }
}

TEST_CASE("sim config validation") {
    SimConfig bad = base_config(1);
    bad.prob_noise = 0.3;
    CHECK_THROWS_AS(generate_truth(bad), ConfigError);
    bad = base_config(1);
    bad.sub_rate = 0.8;
    bad.del_rate = 0.5;
    CHECK_THROWS_AS(generate_truth(bad), ConfigError);
    bad = base_config(1);
    bad.n_speakers = 0;
    CHECK_THROWS_AS(generate_truth(bad), ConfigError);
}

TEST_CASE("zero perturbation rates yield the truth back") {
    const SimConfig cfg = base_config(77);
    const Truth truth = generate_truth(cfg);
    const Perturbed hyp = perturb(truth, cfg);
    CHECK(hyp.hyp_words == truth.words);
    CHECK(hyp.hyp_diarization == truth.diarization);
    CHECK(hyp.substitutions == 0);
    CHECK(hyp.deletions == 0);
    CHECK(hyp.insertions == 0);

    std::vector<std::string> hyp_tokens;
    for (const auto& w : hyp.hyp_words) {
        hyp_tokens.push_back(w.text);
    }
    CHECK(wer(truth.tokens(), hyp_tokens).wer() == 0.0);
    CHECK(der(truth.diarization, hyp.hyp_diarization, 0).der() == 0.0);
}

TEST_CASE("substitution-only corruption is counted exactly by wer") {
    SimConfig cfg = base_config(99);
    cfg.sub_rate = 0.2;
    const Truth truth = generate_truth(cfg);
    const Perturbed hyp = perturb(truth, cfg);
    CHECK(hyp.substitutions > 0);
    std::vector<std::string> hyp_tokens;
    for (const auto& w : hyp.hyp_words) {
        hyp_tokens.push_back(w.text);
    }
    const auto out = wer(truth.tokens(), hyp_tokens);
    CHECK(out.substitutions == hyp.substitutions);
    CHECK(out.deletions == 0);
    CHECK(out.insertions == 0);
}

TEST_CASE("mixed corruption keeps the recorded total equal to the distance") {
    for (const std::uint64_t seed : {11ULL, 12ULL, 13ULL, 14ULL}) {
        SimConfig cfg = base_config(seed);
        cfg.sub_rate = 0.1;
        cfg.del_rate = 0.1;
        cfg.ins_rate = 0.1;
        const Truth truth = generate_truth(cfg);
        const Perturbed hyp = perturb(truth, cfg);
        std::vector<std::string> hyp_tokens;
        for (const auto& w : hyp.hyp_words) {
            hyp_tokens.push_back(w.text);
        }
        const std::size_t distance = oracles::edit_distance(truth.tokens(), hyp_tokens);
        CHECK(distance == hyp.substitutions + hyp.deletions + hyp.insertions);
        CHECK(wer(truth.tokens(), hyp_tokens).edits() == distance);
    }
}

TEST_CASE("boundary jitter respects the recorded bound") {
    SimConfig cfg = base_config(55);
    cfg.boundary_jitter = 200;
    const Truth truth = generate_truth(cfg);
    const Perturbed hyp = perturb(truth, cfg);
    CHECK(hyp.max_boundary_shift <= 200);
    CHECK(hyp.boundaries_moved == 2 * truth.diarization.size());

    const auto out = der(truth.diarization, hyp.hyp_diarization, 0);
    const double bound = 2.0 * seconds_from_ms(cfg.boundary_jitter) *
                         static_cast<double>(hyp.boundaries_moved) /
                         seconds_from_ms(out.ref_speech);
    CHECK(out.der() <= bound);
}

TEST_CASE("timestamp jitter keeps hypothesis spans ordered") {
    SimConfig cfg = base_config(66);
    cfg.timestamp_jitter = 150;
    const Truth truth = generate_truth(cfg);
    const Perturbed hyp = perturb(truth, cfg);
    Millis prev = 0;
    for (const auto& w : hyp.hyp_words) {
        CHECK(w.span.start >= prev);
        CHECK(w.span.start <= w.span.end);
        prev = w.span.start;
    }
}

TEST_CASE("spurious speakers add recorded duration") {
    SimConfig cfg = base_config(88);
    cfg.spurious_rate = 0.5;
    const Truth truth = generate_truth(cfg);
    const Perturbed hyp = perturb(truth, cfg);
    CHECK(hyp.spurious_duration > 0);
    Millis spur_total = 0;
    for (const auto& s : hyp.hyp_diarization.segments()) {
        if (s.speaker.rfind("spur", 0) == 0) {
            spur_total += s.span.duration();
        }
    }
    CHECK(spur_total == hyp.spurious_duration);
}
