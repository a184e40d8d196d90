#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lelc/bitstring.hpp"
#include "lelc/errors.hpp"
#include "lelc/histogram.hpp"

namespace lelc {

// Lookup-table code: every k-bit dataword gets a fixed n-bit codeword, the
// most frequent datawords taking the lightest codewords.
struct CodebookMap {
    std::uint32_t k = 0;
    std::uint32_t n = 0;
    // codewords[d] is the codeword value for dataword value d.
    std::vector<std::uint64_t> codewords;
};

// Builds a map from a histogram. Datawords are visited most frequent first;
// codeword candidates are consumed in (weight, value) order.
//
// With weight_monotone set, a dataword only accepts a codeword that is no
// heavier than itself, and a candidate is skipped whenever taking it would
// strand a later dataword (for some weight w, fewer unused codewords of
// weight <= w would remain than unassigned datawords of weight <= w need).
// That filter keeps the greedy pass feasible for any histogram when n > k.
inline CodebookMap mapgen(const DatawordHistogram& h, std::uint32_t n, bool weight_monotone = false) {
    if (h.k == 0)
        throw InvalidParameter("mapgen: histogram has no dataword size");
    if (h.k > 16)
        throw InvalidParameter("mapgen: dataword size above 16 bits is not supported");
    if (n < h.k || n > 20)
        throw InvalidParameter("mapgen: codeword size must lie in [k, 20]");
    if (weight_monotone && n < h.k + 1)
        throw InvalidParameter("mapgen: the weight-monotone constraint needs at least one spare bit");

    std::uint32_t k = h.k;
    std::size_t dataword_count = std::size_t{1} << k;

    // Codeword candidates bucketed by weight, each bucket in ascending value
    // order. Within a bucket candidates are interchangeable for the
    // feasibility counts, so consuming each bucket front-to-back realizes the
    // global (weight, value) order.
    std::vector<std::vector<std::uint64_t>> bucket(n + 1);
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c)
        bucket[static_cast<std::size_t>(std::popcount(c))].push_back(c);
    std::vector<std::size_t> bucket_next(n + 1, 0);

    // unused_cw[w] / unassigned_dw[w]: how many codewords / datawords of
    // exactly weight w are still free.
    std::vector<std::size_t> unused_cw(n + 1);
    for (std::uint32_t w = 0; w <= n; ++w)
        unused_cw[w] = bucket[w].size();
    std::vector<std::size_t> unassigned_dw(k + 1, 0);
    for (std::uint64_t d = 0; d < dataword_count; ++d)
        ++unassigned_dw[static_cast<std::size_t>(std::popcount(d))];

    auto feasible_after = [&](std::uint32_t cw_weight, std::uint32_t dw_weight) {
        std::size_t cw_cum = 0, dw_cum = 0;
        for (std::uint32_t w = 0; w <= k; ++w) {
            cw_cum += unused_cw[w] - (w == cw_weight ? 1 : 0);
            dw_cum += unassigned_dw[w] - (w == dw_weight ? 1 : 0);
            if (cw_cum < dw_cum)
                return false;
        }
        return true;
    };

    CodebookMap map;
    map.k = k;
    map.n = n;
    map.codewords.assign(dataword_count, 0);

    for (std::uint64_t d : frequency_order(h)) {
        auto dw_weight = static_cast<std::uint32_t>(std::popcount(d));
        std::uint32_t cap = weight_monotone ? dw_weight : n;
        bool assigned = false;
        for (std::uint32_t w = 0; w <= cap && !assigned; ++w) {
            if (bucket_next[w] == bucket[w].size())
                continue;
            if (weight_monotone && !feasible_after(w, dw_weight))
                continue;
            map.codewords[d] = bucket[w][bucket_next[w]++];
            --unused_cw[w];
            --unassigned_dw[dw_weight];
            assigned = true;
        }
        if (!assigned)
            throw InvalidParameter("mapgen: no admissible codeword for dataword " +
                                   BitString::from_value(d, k).str());
    }
    return map;
}

inline void validate_map(const CodebookMap& map) {
    if (map.k == 0 || map.n < map.k)
        throw InvalidParameter("map: invalid geometry k=" + std::to_string(map.k) +
                               " n=" + std::to_string(map.n));
    if (map.codewords.size() != (std::size_t{1} << map.k))
        throw InvalidParameter("map: expected " + std::to_string(std::size_t{1} << map.k) +
                               " codewords, have " + std::to_string(map.codewords.size()));
    std::vector<std::uint64_t> sorted = map.codewords;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidParameter("map: codewords are not distinct");
    for (std::uint64_t c : map.codewords)
        if (map.n < 64 && (c >> map.n) != 0)
            throw InvalidParameter("map: codeword value does not fit in n bits");
}

// Substitutes each k-bit dataword with its n-bit codeword.
inline BitString map_encode(const BitString& payload, const CodebookMap& map) {
    validate_map(map);
    if (payload.size() % map.k != 0)
        throw CodecError("payload length " + std::to_string(payload.size()) +
                         " is not a multiple of the dataword size " + std::to_string(map.k));
    BitString out;
    out.reserve(payload.size() / map.k * map.n);
    for (std::size_t pos = 0; pos < payload.size(); pos += map.k)
        out.append(BitString::from_value(map.codewords[payload.value_at(pos, map.k)], map.n));
    return out;
}

inline BitString map_decode(const BitString& coded, const CodebookMap& map) {
    validate_map(map);
    if (coded.size() % map.n != 0)
        throw CodecError("coded length " + std::to_string(coded.size()) +
                         " is not a multiple of the codeword size " + std::to_string(map.n));
    std::unordered_map<std::uint64_t, std::uint64_t> reverse;
    reverse.reserve(map.codewords.size());
    for (std::uint64_t d = 0; d < map.codewords.size(); ++d)
        reverse.emplace(map.codewords[d], d);

    BitString out;
    out.reserve(coded.size() / map.n * map.k);
    for (std::size_t pos = 0; pos < coded.size(); pos += map.n) {
        auto it = reverse.find(coded.value_at(pos, map.n));
        if (it == reverse.end())
            throw CodecError("unknown codeword " + coded.slice(pos, map.n).str() + " at bit " +
                             std::to_string(pos));
        out.append(BitString::from_value(it->second, map.k));
    }
    return out;
}

// Energy reduction (percent of 1s removed) of every map against every trace;
// result[i][j] is map j applied to trace i. A trace that carries no 1s at
// all yields NaN entries.
inline std::vector<std::vector<double>> cross_evaluate(const std::vector<CodebookMap>& maps,
                                                       const std::vector<std::vector<BitString>>& traces) {
    std::vector<std::vector<double>> result(traces.size(), std::vector<double>(maps.size(), 0.0));
    for (std::size_t i = 0; i < traces.size(); ++i) {
        std::size_t raw = 0;
        for (const auto& payload : traces[i])
            raw += weight(payload);
        for (std::size_t j = 0; j < maps.size(); ++j) {
            std::size_t coded = 0;
            for (const auto& payload : traces[i])
                coded += weight(map_encode(payload, maps[j]));
            result[i][j] = 100.0 * (1.0 - static_cast<double>(coded) / static_cast<double>(raw));
        }
    }
    return result;
}

} // namespace lelc
