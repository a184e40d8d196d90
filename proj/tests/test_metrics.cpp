#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lelc/bitstring.hpp"
#include "lelc/codec.hpp"
#include "lelc/metrics.hpp"
#include "lelc/nrzi.hpp"

using lelc::BitString;
using lelc::CrosstalkWeightTable;
using lelc::LinkConfig;

namespace {

BitString random_payload(std::mt19937_64& rng, std::size_t bits) {
    BitString b;
    b.reserve(bits);
    for (std::size_t i = 0; i < bits; ++i)
        b.push_back(rng() & 1);
    return b;
}

std::vector<BitString> random_trace(std::uint64_t seed, std::size_t count, std::size_t bits) {
    std::mt19937_64 rng(seed);
    std::vector<BitString> trace;
    trace.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        trace.push_back(random_payload(rng, bits));
    return trace;
}

// Encodes fine but hands back garbage on decode; the analyzer must notice.
class LyingCodec final : public lelc::Codec {
public:
    std::string name() const override { return "lying"; }
    BitString encode(const BitString& payload) const override { return payload; }
    BitString decode(const BitString& coded, std::size_t payload_bits) const override {
        BitString out = coded.slice(0, payload_bits);
        out.flip(0);
        return out;
    }
    std::optional<std::size_t> coded_bits_fixed(std::size_t padded_bits) const override {
        return padded_bits;
    }
};

} // namespace

TEST_CASE("link shape must tile the flit exactly") {
    CHECK_NOTHROW(LinkConfig{}.validate());
    CHECK_NOTHROW(LinkConfig{4, 4, 16, 64, 1}.validate());
    CHECK_THROWS_AS((LinkConfig{8, 16, 100, 512, 1}.validate()), lelc::InvalidParameter);
    CHECK_THROWS_AS((LinkConfig{0, 16, 128, 512, 1}.validate()), lelc::InvalidParameter);
    CHECK_THROWS_AS((LinkConfig{8, 16, 0, 512, 1}.validate()), lelc::InvalidParameter);
}

TEST_CASE("flit counts include the header and round the payload up") {
    LinkConfig link;
    CHECK(lelc::flit_count(512, link) == 5);
    CHECK(lelc::flit_count(513, link) == 6);
    CHECK(lelc::flit_count(576, link) == 6);
    CHECK(lelc::flit_count(640, link) == 6);
    CHECK(lelc::flit_count(641, link) == 7);
    CHECK(lelc::flit_count(0, link) == 1);
    CHECK(lelc::flit_count(1, link) == 2);

    LinkConfig two_headers{8, 16, 128, 512, 2};
    CHECK(lelc::flit_count(512, two_headers) == 6);
}

TEST_CASE("flitize pads only the last flit") {
    BitString b;
    for (int i = 0; i < 200; ++i)
        b.push_back(i % 3 == 0);
    auto flits = lelc::flitize(b, 128);
    REQUIRE(flits.size() == 2);
    CHECK(flits[0].size() == 128);
    CHECK(flits[1].size() == 128);
    CHECK(flits[0] == b.slice(0, 128));
    CHECK(flits[1].slice(0, 72) == b.slice(128, 72));
    for (std::size_t i = 72; i < 128; ++i)
        CHECK(flits[1][i] == 0);

    CHECK(lelc::flitize(BitString(), 128).empty());
    CHECK_THROWS_AS(lelc::flitize(b, 0), lelc::InvalidParameter);
}

TEST_CASE("identity coding changes nothing in the report") {
    auto trace = random_trace(11, 40, 512);
    lelc::IdentityCodec codec;
    auto report = lelc::energy_report(trace, codec, LinkConfig{});
    CHECK(report.payloads == 40);
    CHECK(report.dataword_bits == 40 * 512);
    CHECK(report.codeword_bits == 40 * 512);
    CHECK(report.rate == 1.0);
    CHECK(report.ones_coded == report.ones_raw);
    REQUIRE(report.reduction_pct.has_value());
    CHECK(*report.reduction_pct == 0.0);
    CHECK(report.flits_coded == report.flits_uncoded);
    CHECK(report.flits_uncoded == 40 * 5);
}

TEST_CASE("a k-to-k-plus-one code lands on its exact rate") {
    auto trace = random_trace(12, 50, 512);
    lelc::FnwCodec codec(8);
    auto report = lelc::energy_report(trace, codec, LinkConfig{});
    CHECK(report.rate == 8.0 / 9.0);
    CHECK(report.codeword_bits == 50 * 576);
    // 576 coded bits need five data flits plus the header.
    CHECK(report.flits_coded == 50 * 6);
    CHECK(report.flits_uncoded == 50 * 5);
    REQUIRE(report.reduction_pct.has_value());
    CHECK(*report.reduction_pct >= 0.0);
}

TEST_CASE("payloads that straddle a group boundary are charged for the padding") {
    auto trace = random_trace(13, 10, 512);
    lelc::FnwCodec codec(3);
    auto report = lelc::energy_report(trace, codec, LinkConfig{});
    // 512 rounds up to 513 datawords bits and 171 codewords of 4 bits.
    CHECK(report.dataword_bits == 10 * 513);
    CHECK(report.codeword_bits == 10 * 684);
    CHECK(report.rate == 0.75);
}

TEST_CASE("a silent trace has no transition budget to reduce") {
    std::vector<BitString> trace(5, BitString(512));
    lelc::FnwCodec codec(8);
    auto report = lelc::energy_report(trace, codec, LinkConfig{});
    CHECK(report.ones_raw == 0);
    CHECK(report.ones_coded == 0);
    CHECK_FALSE(report.reduction_pct.has_value());
}

TEST_CASE("the report refuses codecs that cannot restore the payload") {
    auto trace = random_trace(14, 3, 512);
    LyingCodec codec;
    CHECK_THROWS_AS(lelc::energy_report(trace, codec, LinkConfig{}), lelc::CodecError);
}

TEST_CASE("coupling weights reject negatives and a non-minimal idle class") {
    CHECK_NOTHROW(CrosstalkWeightTable{}.validate());
    CrosstalkWeightTable negative;
    negative.victim_only = -1.0;
    CHECK_THROWS_AS(negative.validate(), lelc::InvalidParameter);
    CrosstalkWeightTable heavy_idle;
    heavy_idle.both_idle = 0.5;
    CHECK_THROWS_AS(heavy_idle.validate(), lelc::InvalidParameter);
}

TEST_CASE("coupling on a quiet link is zero and leaves the ratio undefined") {
    std::vector<BitString> trace(4, BitString(512));
    lelc::IdentityCodec codec;
    auto report = lelc::crosstalk_report(trace, codec, LinkConfig{});
    CHECK(report.total_uncoded == 0.0);
    CHECK(report.total_coded == 0.0);
    CHECK_FALSE(report.ratio.has_value());
    // Every victim step is the all-idle pattern.
    REQUIRE(report.histogram_uncoded.size() == 1);
    auto& [pattern, count] = *report.histogram_uncoded.begin();
    CHECK(pattern.str() == "I_l0_u0_i4");
    CHECK(count == 4 * 4 * 128);
}

TEST_CASE("a lone wire has nobody to couple with") {
    LinkConfig link{1, 1, 1, 8, 1};
    std::vector<BitString> trace = {BitString::from_string("10110101")};
    lelc::IdentityCodec codec;
    auto report = lelc::crosstalk_report(trace, codec, link);
    CHECK(report.total_uncoded == 0.0);
    CHECK(report.total_coded == 0.0);
}

TEST_CASE("neighbor pairs are classified by their joint swing") {
    // Two adjacent wires, driven through hold/rise/fall combinations.
    LinkConfig link{1, 2, 2, 8, 1};
    std::vector<BitString> flits = {
        BitString::from_string("01"), // left holds low, right rises
        BitString::from_string("11"), // left rises, right falls: opposing
        BitString::from_string("00"), // both idle
    };
    auto tl = lelc::nrzi_evolve(flits, 2);
    std::map<lelc::CrosstalkPattern, std::uint64_t> hist;
    double total = lelc::detail::crosstalk_total(tl, link, CrosstalkWeightTable{}, hist);
    // Step 1: victim-only plus neighbor-only. Step 2: opposing twice. Step 3: quiet.
    CHECK(total == 6.0);

    std::map<std::string, std::uint64_t> by_name;
    for (const auto& [pattern, count] : hist)
        by_name[pattern.str()] += count;
    CHECK(by_name["I_l0_u1_i3"] == 1);
    CHECK(by_name["T_l0_u0_i4"] == 1);
    CHECK(by_name["T_l0_u1_i3"] == 2);
    CHECK(by_name["I_l0_u0_i4"] == 2);
}

TEST_CASE("wires swinging together couple for free") {
    LinkConfig link{1, 2, 2, 8, 1};
    std::vector<BitString> flits = {BitString::from_string("11")}; // both rise
    auto tl = lelc::nrzi_evolve(flits, 2);
    std::map<lelc::CrosstalkPattern, std::uint64_t> hist;
    CHECK(lelc::detail::crosstalk_total(tl, link, CrosstalkWeightTable{}, hist) == 0.0);
    CHECK(hist.begin()->first.str() == "T_l1_u0_i3");
}

TEST_CASE("dropping an isolated transition can only lower the coupling") {
    LinkConfig link{2, 2, 4, 8, 1};
    auto total_of = [&](const std::vector<BitString>& flits) {
        auto tl = lelc::nrzi_evolve(flits, 4);
        std::map<lelc::CrosstalkPattern, std::uint64_t> hist;
        return lelc::detail::crosstalk_total(tl, link, CrosstalkWeightTable{}, hist);
    };
    // One wire toggling against quiet neighbors costs its own weight plus
    // the neighbors' views of it.
    double busy = total_of({BitString::from_string("1000"), BitString::from_string("1000")});
    double calm = total_of({BitString::from_string("1000"), BitString::from_string("0000")});
    CHECK(busy == 8.0);
    CHECK(calm == 4.0);
    CHECK(calm < busy);
}

TEST_CASE("coded and uncoded sides of the coupling report stay consistent") {
    std::mt19937_64 rng(15);
    std::vector<BitString> trace;
    for (int i = 0; i < 20; ++i) {
        BitString p(512);
        // Zero-leaning payload so the code has something to gain.
        for (int b = 0; b < 24; ++b)
            p.set(rng() % 512, true);
        trace.push_back(p);
    }
    lelc::FnwCodec codec(8);
    auto report = lelc::crosstalk_report(trace, codec, LinkConfig{});
    CHECK(report.total_uncoded > 0.0);
    CHECK(report.total_coded >= 0.0);
    REQUIRE(report.ratio.has_value());
    CHECK(*report.ratio == report.total_coded / report.total_uncoded);

    // Histogram entries cover every victim step on both sides.
    std::uint64_t uncoded_steps = 0;
    for (const auto& [pattern, count] : report.histogram_uncoded)
        uncoded_steps += count;
    CHECK(uncoded_steps == 20 * 4 * 128);
    std::uint64_t coded_steps = 0;
    for (const auto& [pattern, count] : report.histogram_coded)
        coded_steps += count;
    CHECK(coded_steps == 20 * 5 * 128);
}
