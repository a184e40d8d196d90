#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lelc/bitstring.hpp"
#include "lelc/errors.hpp"

namespace lelc {

// Occurrence counts of every k-bit dataword value. Dataword values read the
// bits in wire order, first bit most significant.
struct DatawordHistogram {
    std::uint32_t k = 0;
    std::vector<std::uint64_t> counts;

    explicit DatawordHistogram(std::uint32_t k_bits = 0) : k(k_bits) {
        if (k_bits > 0) {
            if (k_bits > 20)
                throw InvalidParameter("dataword size above 20 bits is not supported");
            counts.assign(std::size_t{1} << k_bits, 0);
        }
    }

    std::uint64_t total() const {
        return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    }
};

// Counts dataword occurrences across all payloads of a trace. Every payload
// must split evenly into k-bit words.
inline DatawordHistogram profile(const std::vector<BitString>& payloads, std::uint32_t k) {
    if (k == 0)
        throw InvalidParameter("dataword size must be positive");
    DatawordHistogram h(k);
    for (std::size_t i = 0; i < payloads.size(); ++i) {
        if (payloads[i].size() % k != 0)
            throw CodecError("payload " + std::to_string(i) + ": length " +
                             std::to_string(payloads[i].size()) +
                             " is not a multiple of dataword size " + std::to_string(k));
        for (std::size_t pos = 0; pos < payloads[i].size(); pos += k)
            ++h.counts[payloads[i].value_at(pos, k)];
    }
    return h;
}

// Draws payloads whose datawords are i.i.d. samples from the histogram's
// empirical distribution. Fully deterministic for a given seed.
inline std::vector<BitString> synthesize_trace(const DatawordHistogram& h,
                                               std::size_t payload_count,
                                               std::size_t payload_bits,
                                               std::uint64_t seed) {
    if (h.k == 0)
        throw InvalidParameter("histogram has no dataword size");
    if (payload_bits == 0 || payload_bits % h.k != 0)
        throw InvalidParameter("payload size must be a positive multiple of the dataword size");
    std::uint64_t total = h.total();
    if (total == 0)
        throw InvalidParameter("cannot sample from an empty histogram");

    std::vector<std::uint64_t> cumulative(h.counts.size());
    std::partial_sum(h.counts.begin(), h.counts.end(), cumulative.begin());

    // mt19937_64 output reduced mod total: the bias is below 2^-40 for any
    // realistic count sum, far under what any test here can see.
    std::mt19937_64 rng(seed);
    std::vector<BitString> payloads;
    payloads.reserve(payload_count);
    for (std::size_t p = 0; p < payload_count; ++p) {
        BitString payload;
        payload.reserve(payload_bits);
        for (std::size_t word = 0; word < payload_bits / h.k; ++word) {
            std::uint64_t draw = rng() % total;
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), draw);
            auto value = static_cast<std::uint64_t>(it - cumulative.begin());
            payload.append(BitString::from_value(value, h.k));
        }
        payloads.push_back(std::move(payload));
    }
    return payloads;
}

// Dataword values sorted most frequent first; ties broken by ascending value.
inline std::vector<std::uint64_t> frequency_order(const DatawordHistogram& h) {
    std::vector<std::uint64_t> order(h.counts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        if (h.counts[a] != h.counts[b])
            return h.counts[a] > h.counts[b];
        return a < b;
    });
    return order;
}

} // namespace lelc
