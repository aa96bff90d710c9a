#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
// Drives the installed binary end to end: exit codes, config resolution,
// and the self-check loop. The binary path arrives via CHRONOALIGN_CLI.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "chronoalign/io.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using chronoalign::read_file;
using chronoalign::write_file_atomic;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

std::string cli_path() {
    const char* env = std::getenv("CHRONOALIGN_CLI");
    REQUIRE_MESSAGE(env != nullptr, "CHRONOALIGN_CLI must point at the binary");
    return env;
}

RunResult run(const std::string& args, const std::string& env_prefix = {}) {
    const std::string cmd = env_prefix + cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        res.output.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("chronoalign_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("score wer on identical files prints zero and exits cleanly") {
    TempDir dir;
    write_file_atomic(dir.file("r.txt"), "ami valo achi\n");
    write_file_atomic(dir.file("h.txt"), "ami valo achi\n");
    const auto res = run("score wer --ref " + dir.file("r.txt") + " --hyp " + dir.file("h.txt"));
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("wer 0.000") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("no-such-command").exit_code == 2);
    CHECK(run("score").exit_code == 2);
    CHECK(run("sweep --metric der").exit_code == 2);  // missing required flags
    CHECK(run("vad-segment").exit_code == 2);         // no input mode chosen
    CHECK(run("align --hyp a.json --hyp-dir d").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
    CHECK(run("--version").exit_code == 0);
}

TEST_CASE("validation errors exit with 1") {
    TempDir dir;
    const auto missing =
        run("score wer --ref " + dir.file("none.txt") + " --hyp " + dir.file("none.txt"));
    CHECK(missing.exit_code == 1);

    write_file_atomic(dir.file("bad.cfg"), "no_such_key = 1\n");
    write_file_atomic(dir.file("r.txt"), "a\n");
    const auto bad_cfg = run("score wer --config " + dir.file("bad.cfg") + " --ref " +
                             dir.file("r.txt") + " --hyp " + dir.file("r.txt"));
    CHECK(bad_cfg.exit_code == 1);
    CHECK(bad_cfg.output.find("no_such_key") != std::string::npos);

    // empty reference: WER undefined
    write_file_atomic(dir.file("empty.txt"), "\n");
    const auto undef = run("score wer --ref " + dir.file("empty.txt") + " --hyp " +
                           dir.file("r.txt"));
    CHECK(undef.exit_code == 1);
}

TEST_CASE("flags override config files") {
    TempDir dir;
    write_file_atomic(dir.file("cfg"), "chunk_min = 5\nchunk_max = 30\n");
    write_file_atomic(dir.file("words.json"),
                      R"({"schema_version": 1, "audio_id": "r", "words": [
                          {"text": "a", "start_s": 0.0, "end_s": 6.0},
                          {"text": "b", "start_s": 7.0, "end_s": 26.0}]})");
    // the config file keeps the 26-s chunk; the flag raises chunk_min
    // past it, so the flag must win
    const auto res = run("chunk --config " + dir.file("cfg") + " --chunk_min 27 --words " +
                         dir.file("words.json") + " --out " + dir.file("m.jsonl"));
    CHECK(res.exit_code == 0);
    CHECK(read_file(dir.file("m.jsonl")).empty());

    const auto res2 = run("chunk --config " + dir.file("cfg") + " --words " +
                          dir.file("words.json") + " --out " + dir.file("m2.jsonl"));
    CHECK(res2.exit_code == 0);
    CHECK(read_file(dir.file("m2.jsonl")).find("\"text\": \"a b\"") != std::string::npos);
}

TEST_CASE("the CHRONOALIGN_CONFIG variable names the default config") {
    TempDir dir;
    write_file_atomic(dir.file("cfg"), "rep_min_repeats = 3\n");
    write_file_atomic(dir.file("in.txt"), "x x x y\n");
    const auto res = run("filter-text --in " + dir.file("in.txt") + " --out " +
                             dir.file("out.txt"),
                         "CHRONOALIGN_CONFIG=" + dir.file("cfg") + " ");
    CHECK(res.exit_code == 0);
    // min_repeats 3 from the env-named config collapses the triple
    CHECK(read_file(dir.file("out.txt")) == "x y\n");
}

TEST_CASE("diar-post output passes its own self-check") {
    TempDir dir;
    write_file_atomic(dir.file("in.rttm"),
                      "SPEAKER f 1 0.000 5.000 <NA> <NA> A <NA> <NA>\n"
                      "SPEAKER f 1 3.000 5.000 <NA> <NA> B <NA> <NA>\n"
                      "SPEAKER f 1 9.000 0.050 <NA> <NA> B <NA> <NA>\n");
    write_file_atomic(dir.file("vad.json"),
                      R"({"schema_version": 1, "audio_id": "f", "speech": [[0.0, 7.5]]})");
    const auto post = run("diar-post --in " + dir.file("in.rttm") + " --out " +
                          dir.file("out.rttm") + " --vad " + dir.file("vad.json"));
    CHECK(post.exit_code == 0);
    const auto check = run("score der --self-check --hyp " + dir.file("out.rttm") + " --vad " +
                           dir.file("vad.json"));
    CHECK(check.exit_code == 0);
    CHECK(check.output.find("exclusive: ok") != std::string::npos);
    CHECK(check.output.find("vad containment: ok") != std::string::npos);

    // self-check flags an overlapping hypothesis
    const auto bad = run("score der --self-check --hyp " + dir.file("in.rttm"));
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("VIOLATED") != std::string::npos);
}

TEST_CASE("run manifests accompany outputs with config hash and digests") {
    TempDir dir;
    write_file_atomic(dir.file("probs.json"),
                      R"({"schema_version": 1, "audio_id": "r", "frame_rate": 100,
                          "origin_s": 0, "probs": [1, 1, 1, 0, 0]})");
    const auto res =
        run("vad-segment --probs " + dir.file("probs.json") + " --out " + dir.file("vad.json"));
    CHECK(res.exit_code == 0);
    const std::string manifest = read_file(dir.file("vad.json") + ".run.json");
    CHECK(manifest.find("\"command\": \"vad-segment\"") != std::string::npos);
    CHECK(manifest.find("\"config_sha256\"") != std::string::npos);
    CHECK(manifest.find(chronoalign::sha256_hex(read_file(dir.file("probs.json")))) !=
          std::string::npos);
}

TEST_CASE("diar-post clusters segments when embeddings are supplied") {
    TempDir dir;
    // two interleaved turns per acoustic identity, labeled per segment
    write_file_atomic(dir.file("in.rttm"),
                      "SPEAKER f 1 0.000 2.000 <NA> <NA> t0 <NA> <NA>\n"
                      "SPEAKER f 1 3.000 2.000 <NA> <NA> t1 <NA> <NA>\n"
                      "SPEAKER f 1 6.000 2.000 <NA> <NA> t2 <NA> <NA>\n"
                      "SPEAKER f 1 9.000 2.000 <NA> <NA> t3 <NA> <NA>\n");
    write_file_atomic(dir.file("emb.json"),
                      R"({"schema_version": 1, "audio_id": "f", "dim": 2, "embeddings": [
                          {"segment": 0, "vector": [1.0, 0.0]},
                          {"segment": 1, "vector": [0.0, 1.0]},
                          {"segment": 2, "vector": [0.98, 0.02]},
                          {"segment": 3, "vector": [0.03, 0.97]}]})");
    const auto res = run("diar-post --in " + dir.file("in.rttm") + " --out " +
                         dir.file("out.rttm") + " --embeddings " + dir.file("emb.json"));
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("2 speaker(s)") != std::string::npos);
    const std::string out = read_file(dir.file("out.rttm"));
    CHECK(out.find("spk0") != std::string::npos);
    CHECK(out.find("spk1") != std::string::npos);
    CHECK(out.find("t0") == std::string::npos);
}

TEST_CASE("sweep walks the grid and flags the best row") {
    TempDir dir;
    fs::create_directories(dir.path / "ref");
    fs::create_directories(dir.path / "hyp");
    write_file_atomic(dir.path / "ref" / "a.rttm",
                      "SPEAKER a 1 0.000 10.000 <NA> <NA> A <NA> <NA>\n");
    // hypothesis has a 0.1 s sliver that only survives small transient values
    write_file_atomic(dir.path / "hyp" / "a.rttm",
                      "SPEAKER a 1 0.000 10.000 <NA> <NA> A <NA> <NA>\n"
                      "SPEAKER a 1 11.000 0.100 <NA> <NA> B <NA> <NA>\n");
    const auto res = run("sweep --metric der --grid transient=0.05,0.15 --ref-dir " +
                         (dir.path / "ref").string() + " --hyp-dir " +
                         (dir.path / "hyp").string() + " --out " + dir.file("results.json"));
    CHECK(res.exit_code == 0);
    // transient 0.15 purges the sliver: der 0; transient 0.05 keeps it: der 0.01
    CHECK(res.output.find("* 0.0000  0.15") != std::string::npos);
    CHECK(res.output.find("  0.0100  0.05") != std::string::npos);
    const std::string results = read_file(dir.file("results.json"));
    CHECK(results.find("\"best\": true") != std::string::npos);
    CHECK(results.find("\"metric\": \"der\"") != std::string::npos);

    const auto bad = run("sweep --metric der --grid nope=1 --ref-dir " +
                         (dir.path / "ref").string() + " --hyp-dir " +
                         (dir.path / "hyp").string());
    CHECK(bad.exit_code == 0);  // per-row failure, sweep itself succeeds
    CHECK(bad.output.find("failed") != std::string::npos);
}

TEST_CASE("batch mode lists per-file failures and exits 1") {
    TempDir dir;
    fs::create_directories(dir.path / "hyp");
    fs::create_directories(dir.path / "ref");
    write_file_atomic(dir.path / "hyp" / "a.txt", "x y\n");
    write_file_atomic(dir.path / "ref" / "a.txt", "x y\n");
    write_file_atomic(dir.path / "hyp" / "b.txt", "x\n");  // ref missing
    const auto res = run("score wer --ref-dir " + (dir.path / "ref").string() + " --hyp-dir " +
                         (dir.path / "hyp").string());
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("a: wer 0.000") != std::string::npos);
    CHECK(res.output.find("b.txt") != std::string::npos);
    CHECK(res.output.find("1 of 2 file(s) failed") != std::string::npos);
}
