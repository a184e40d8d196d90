// Drives the installed binary end to end through temp files.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "lelc/bitstring.hpp"
#include "lelc/io.hpp"

namespace {

std::string tmp(const std::string& name) { return "/tmp/lelc_cli_test_" + name; }

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string out_path = tmp("stdout");
    std::string cmd = std::string(LELC_CLI_PATH) + " " + args + " > " + out_path + " 2>" +
                      tmp("stderr");
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    std::ifstream in(out_path);
    std::string out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Zero-dominated byte histogram used by most cases.
std::string hist_file() {
    auto path = tmp("hist.txt");
    write_text(path, "LELCHIST 8\n00000000 600\n00000001 5\n10000000 5\n11111111 150\n");
    return path;
}

std::string trace_file() {
    auto path = tmp("trace.lelc");
    auto result = run("synth --hist " + hist_file() + " --payloads 64 --payload-bits 512" +
                      " --seed 9 --out " + path);
    REQUIRE(result.exit_code == 0);
    return path;
}

} // namespace

TEST_CASE("help and usage errors") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("").exit_code == 1);
    CHECK(run("frobnicate").exit_code == 1);
    CHECK(run("profile --k 8").exit_code == 1);              // missing required flags
    CHECK(run("encode --codec nonesuch:3 --trace x --out y").exit_code == 1);
}

TEST_CASE("synthesis and profiling invert each other") {
    auto trace = trace_file();
    auto hist_out = tmp("profiled.txt");
    REQUIRE(run("profile --trace " + trace + " --k 8 --out " + hist_out).exit_code == 0);
    auto h = lelc::read_histogram(hist_out);
    CHECK(h.k == 8);
    std::uint64_t total = 0;
    for (auto c : h.counts)
        total += c;
    CHECK(total == 64 * 512 / 8);
    // The sampled trace keeps the zero dataword dominant.
    CHECK(h.counts[0] > total / 2);
}

TEST_CASE("synthesis is deterministic per seed") {
    auto a = tmp("det_a.lelc");
    auto b = tmp("det_b.lelc");
    auto c = tmp("det_c.lelc");
    auto base = "synth --hist " + hist_file() + " --payloads 16 --payload-bits 256 --out ";
    REQUIRE(run(base + a + " --seed 5").exit_code == 0);
    REQUIRE(run(base + b + " --seed 5").exit_code == 0);
    REQUIRE(run(base + c + " --seed 6").exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));
}

TEST_CASE("mapgen reproduces the known best four-bit codebook") {
    auto hist = tmp("byfreq.txt");
    write_text(hist, "LELCHIST 3\n000 80\n001 10\n010 4\n011 2\n100 20\n101 1\n110 8\n111 40\n");
    auto map_out = tmp("map34.txt");
    REQUIRE(run("mapgen --hist " + hist + " --n 4 --weight-monotone --out " + map_out)
                .exit_code == 0);
    CHECK(slurp(map_out) ==
          "LELCMAP 3 4\n0000\n0100\n1000\n0101\n0010\n0110\n0011\n0001\n");
}

TEST_CASE("encoded traces decode back to the original file") {
    auto trace = trace_file();
    auto map_out = tmp("map89.txt");
    REQUIRE(run("mapgen --hist " + hist_file() + " --n 9 --weight-monotone --out " + map_out)
                .exit_code == 0);

    std::vector<std::string> codecs = {
        "identity", "fnw:3",  "fnw:8", "fnw2:4,4", "tc1", "tc2", "tc1p",
        "map:" + map_out, "compound:32," + map_out,
    };
    for (const auto& codec : codecs) {
        INFO("codec " << codec);
        auto enc = tmp("enc.lelc");
        auto dec = tmp("dec.lelc");
        REQUIRE(run("encode --codec " + codec + " --trace " + trace + " --out " + enc)
                    .exit_code == 0);
        REQUIRE(run("decode --codec " + codec + " --trace " + enc + " --out " + dec)
                    .exit_code == 0);
        CHECK(slurp(dec) == slurp(trace));
    }
}

TEST_CASE("coded traces carry a length table only when they need one") {
    auto trace = trace_file();
    auto enc = tmp("version_probe.lelc");

    // 512 divides into bytes: fixed rate, no padding, plain header.
    REQUIRE(run("encode --codec fnw:8 --trace " + trace + " --out " + enc).exit_code == 0);
    CHECK(slurp(enc)[4] == 1);

    // k=3 forces padding, so the original size must be recorded.
    REQUIRE(run("encode --codec fnw:3 --trace " + trace + " --out " + enc).exit_code == 0);
    CHECK(slurp(enc)[4] == 2);

    // Tree codes emit variable-size payloads.
    REQUIRE(run("encode --codec tc1 --trace " + trace + " --out " + enc).exit_code == 0);
    CHECK(slurp(enc)[4] == 2);
}

TEST_CASE("user prefix tables drive the codec from a file") {
    auto pfx = tmp("pairs.txt");
    write_text(pfx, "LELCPFX 4\n00 0\n11 11\n01 100\n10 101\n");
    auto trace = trace_file();
    auto enc = tmp("pfx_enc.lelc");
    auto dec = tmp("pfx_dec.lelc");
    REQUIRE(run("encode --codec pfx:" + pfx + " --trace " + trace + " --out " + enc)
                .exit_code == 0);
    REQUIRE(run("decode --codec pfx:" + pfx + " --trace " + enc + " --out " + dec)
                .exit_code == 0);
    CHECK(slurp(dec) == slurp(trace));

    write_text(pfx, "LELCPFX 1\n0 1\n");
    CHECK(run("encode --codec pfx:" + pfx + " --trace " + trace + " --out " + enc)
              .exit_code == 2);
}

TEST_CASE("analyze reports the fixed rate of the byte-flip code") {
    auto result = run("analyze --codec fnw:8 --trace " + trace_file());
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.find("codec=fnw:8\n") != std::string::npos);
    CHECK(result.out.find("rate=0.888889\n") != std::string::npos);
    CHECK(result.out.find("payloads=64\n") != std::string::npos);
    CHECK(result.out.find("reduction_pct=") != std::string::npos);
    CHECK(result.out.find("xtalk_ratio=") != std::string::npos);
}

TEST_CASE("analyze takes a custom link shape and weight table") {
    auto weights = tmp("weights.txt");
    write_text(weights, "LELCXT\nopposite_direction 4\n");
    auto result = run("analyze --codec identity --trace " + trace_file() +
                      " --link 16,8,128,512 --xtalk " + weights);
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("rate=1.000000\n") != std::string::npos);

    CHECK(run("analyze --codec identity --trace " + trace_file() + " --link 3,5,128,512")
              .exit_code == 1);
}

TEST_CASE("the theory curve ends at the uncoded corner") {
    auto result = run("curve --samples 4");
    REQUIRE(result.exit_code == 0);
    std::size_t lines = 0;
    for (char ch : result.out)
        lines += ch == '\n';
    CHECK(lines == 4);
    CHECK(result.out.find("ones_fraction=0.500000 rate=1.000000 energy_reduction_pct=0.000000") !=
          std::string::npos);
}

TEST_CASE("the throttle sweep is deterministic and saturates at one") {
    auto inj = tmp("inj.txt");
    std::string lines;
    for (int i = 0; i < 200; ++i)
        lines += std::to_string(i * 3) + "\n";
    write_text(inj, lines);
    auto args = "throttle --inj " + inj +
                " --window 50 --flits-coded 5 --flits-uncoded 4 --thresholds 0.0,0.2,1.0";
    auto first = run(args);
    auto second = run(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.find("threshold=1.000000") != std::string::npos);
    CHECK(first.out.find("pct_coded=100.000000") != std::string::npos);

    write_text(inj, "10\n4\n");
    CHECK(run("throttle --inj " + inj + " --thresholds 0.5").exit_code == 2);
}

TEST_CASE("file and codec failures use distinct exit codes") {
    CHECK(run("profile --trace " + tmp("nonexistent.lelc") + " --k 8 --out " + tmp("h.txt"))
              .exit_code == 2);

    auto garbage = tmp("garbage.lelc");
    write_text(garbage, "not a trace at all");
    CHECK(run("analyze --codec fnw:8 --trace " + garbage).exit_code == 2);

    // A coded payload that does not divide into codewords is a codec error.
    auto stub = tmp("stub.lelc");
    lelc::write_trace_varied(stub, {lelc::BitString::from_string("10110")}, 8);
    CHECK(run("decode --codec fnw:8 --trace " + stub + " --out " + tmp("x.lelc"))
              .exit_code == 3);
}
