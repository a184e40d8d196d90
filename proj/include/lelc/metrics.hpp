#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lelc/bitstring.hpp"
#include "lelc/codec.hpp"
#include "lelc/errors.hpp"
#include "lelc/nrzi.hpp"

namespace lelc {

// Physical link shape: a flit drives every wire of the rows x cols grid once.
struct LinkConfig {
    std::uint32_t grid_rows = 8;
    std::uint32_t grid_cols = 16;
    std::uint32_t flit_bits = 128;
    std::uint32_t payload_bits = 512;
    std::uint32_t header_flits = 1;

    void validate() const {
        if (grid_rows == 0 || grid_cols == 0 || flit_bits == 0)
            throw InvalidParameter("link: grid and flit sizes must be positive");
        if (static_cast<std::uint64_t>(grid_rows) * grid_cols != flit_bits)
            throw InvalidParameter("link: grid is " + std::to_string(grid_rows) + "x" +
                                   std::to_string(grid_cols) + " but flits carry " +
                                   std::to_string(flit_bits) + " bits");
    }
};

// Flits one packet needs for coded_bits of payload, headers included.
inline std::uint64_t flit_count(std::size_t coded_bits, const LinkConfig& link) {
    link.validate();
    return link.header_flits + (coded_bits + link.flit_bits - 1) / link.flit_bits;
}

// Splits a bit stream into full flits, zero-padding the last one.
inline std::vector<BitString> flitize(const BitString& bits, std::uint32_t flit_bits) {
    if (flit_bits == 0)
        throw InvalidParameter("flit size must be positive");
    std::vector<BitString> flits;
    flits.reserve((bits.size() + flit_bits - 1) / flit_bits);
    for (std::size_t pos = 0; pos < bits.size(); pos += flit_bits) {
        std::size_t take = std::min<std::size_t>(flit_bits, bits.size() - pos);
        BitString f = bits.slice(pos, take);
        while (f.size() < flit_bits)
            f.push_back(false);
        flits.push_back(std::move(f));
    }
    return flits;
}

struct EnergyReport {
    std::uint64_t payloads = 0;
    std::uint64_t dataword_bits = 0;   // group-extended payload bits fed to the coder
    std::uint64_t codeword_bits = 0;
    std::uint64_t ones_raw = 0;
    std::uint64_t ones_coded = 0;
    double rate = 0.0;
    std::optional<double> reduction_pct; // empty when the raw trace has no 1s
    std::uint64_t flits_uncoded = 0;
    std::uint64_t flits_coded = 0;
};

// Encodes every payload, checks it decodes back, and accumulates rate,
// transition, and flit totals.
inline EnergyReport energy_report(const std::vector<BitString>& trace, const Codec& codec,
                                  const LinkConfig& link) {
    link.validate();
    EnergyReport report;
    report.payloads = trace.size();
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const BitString& payload = trace[i];
        BitString coded = codec.encode(payload);
        if (codec.decode(coded, payload.size()) != payload)
            throw CodecError(codec.name() + " failed to round-trip payload " + std::to_string(i));
        report.dataword_bits += codec.padded_bits(payload.size());
        report.codeword_bits += coded.size();
        report.ones_raw += weight(payload);
        report.ones_coded += weight(coded);
        report.flits_uncoded += flit_count(payload.size(), link);
        report.flits_coded += flit_count(coded.size(), link);
    }
    if (report.codeword_bits > 0)
        report.rate = static_cast<double>(report.dataword_bits) /
                      static_cast<double>(report.codeword_bits);
    if (report.ones_raw > 0)
        report.reduction_pct = 100.0 * (1.0 - static_cast<double>(report.ones_coded) /
                                                  static_cast<double>(report.ones_raw));
    return report;
}

// Coupling cost of one victim/neighbor step, classified by what each wire
// did. Two wires swinging together couple least; a transition against a
// quiet wire costs one unit from each side's view; opposing swings cost two.
struct CrosstalkWeightTable {
    double same_direction = 0.0;
    double victim_only = 1.0;   // victim transitions, neighbor holds
    double opposite_direction = 2.0;
    double neighbor_only = 1.0; // victim holds, neighbor transitions
    double both_idle = 0.0;

    void validate() const {
        for (double w : {same_direction, victim_only, opposite_direction, neighbor_only, both_idle})
            if (w < 0.0)
                throw InvalidParameter("crosstalk weights must be non-negative");
        double lowest = std::min({same_direction, victim_only, opposite_direction, neighbor_only});
        if (both_idle > lowest)
            throw InvalidParameter("the all-idle pattern must have the minimum weight");
    }
};

// Neighborhood shape seen from one victim in one step. Out-of-grid positions
// count as idle so the four neighbor slots always add up; when the victim is
// idle, a transitioning neighbor lands in the unlike slot.
struct CrosstalkPattern {
    bool victim_transitions = false;
    std::uint8_t like = 0;   // neighbors moving with the victim
    std::uint8_t unlike = 0; // neighbors moving against it
    std::uint8_t idle = 0;

    friend bool operator<(const CrosstalkPattern& a, const CrosstalkPattern& b) {
        auto key = [](const CrosstalkPattern& p) {
            return (static_cast<int>(p.victim_transitions) << 12) | (p.like << 8) |
                   (p.unlike << 4) | p.idle;
        };
        return key(a) < key(b);
    }

    std::string str() const {
        return std::string(victim_transitions ? "T" : "I") + "_l" + std::to_string(like) + "_u" +
               std::to_string(unlike) + "_i" + std::to_string(idle);
    }
};

struct CrosstalkReport {
    double total_coded = 0.0;
    double total_uncoded = 0.0;
    std::optional<double> ratio; // empty when the uncoded stream never couples
    std::map<CrosstalkPattern, std::uint64_t> histogram_coded;
    std::map<CrosstalkPattern, std::uint64_t> histogram_uncoded;
};

namespace detail {

// Weighted coupling over all victim steps. Weights accumulate only over
// neighbors that exist; a lone wire never couples.
inline double crosstalk_total(const WireStateTimeline& tl, const LinkConfig& link,
                              const CrosstalkWeightTable& weights,
                              std::map<CrosstalkPattern, std::uint64_t>& histogram) {
    auto rows = static_cast<int>(link.grid_rows);
    auto cols = static_cast<int>(link.grid_cols);
    double total = 0.0;
    for (std::size_t t = 0; t < tl.steps; ++t) {
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                Transition victim = tl.transition(t, static_cast<std::size_t>(r) * cols + c);
                CrosstalkPattern pattern;
                pattern.victim_transitions = victim != Transition::idle;
                const int dr[] = {-1, 1, 0, 0};
                const int dc[] = {0, 0, -1, 1};
                for (int d = 0; d < 4; ++d) {
                    int nr = r + dr[d], nc = c + dc[d];
                    if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) {
                        ++pattern.idle;
                        continue;
                    }
                    Transition other =
                        tl.transition(t, static_cast<std::size_t>(nr) * cols + nc);
                    if (victim == Transition::idle) {
                        if (other == Transition::idle) {
                            ++pattern.idle;
                            total += weights.both_idle;
                        } else {
                            ++pattern.unlike;
                            total += weights.neighbor_only;
                        }
                    } else if (other == Transition::idle) {
                        ++pattern.idle;
                        total += weights.victim_only;
                    } else if (other == victim) {
                        ++pattern.like;
                        total += weights.same_direction;
                    } else {
                        ++pattern.unlike;
                        total += weights.opposite_direction;
                    }
                }
                ++histogram[pattern];
            }
        }
    }
    return total;
}

} // namespace detail

// Couples the coded and uncoded renditions of a trace over the link grid.
// Headers are identical on both sides and are left out entirely; wire state
// persists across flits and payloads.
inline CrosstalkReport crosstalk_report(const std::vector<BitString>& trace, const Codec& codec,
                                        const LinkConfig& link,
                                        const CrosstalkWeightTable& weights = {}) {
    link.validate();
    weights.validate();

    std::vector<BitString> flits_raw, flits_coded;
    for (const auto& payload : trace) {
        for (auto& f : flitize(payload, link.flit_bits))
            flits_raw.push_back(std::move(f));
        for (auto& f : flitize(codec.encode(payload), link.flit_bits))
            flits_coded.push_back(std::move(f));
    }

    CrosstalkReport report;
    auto uncoded_tl = nrzi_evolve(flits_raw, link.flit_bits);
    auto coded_tl = nrzi_evolve(flits_coded, link.flit_bits);
    report.total_uncoded =
        detail::crosstalk_total(uncoded_tl, link, weights, report.histogram_uncoded);
    report.total_coded = detail::crosstalk_total(coded_tl, link, weights, report.histogram_coded);
    if (report.total_uncoded > 0.0)
        report.ratio = report.total_coded / report.total_uncoded;
    return report;
}

} // namespace lelc
