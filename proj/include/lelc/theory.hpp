#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "lelc/errors.hpp"

namespace lelc {

// Binary entropy H(f) = -f log2 f - (1-f) log2 (1-f), with H(0) = H(1) = 0.
inline double binary_entropy(double f) {
    if (!(f >= 0.0 && f <= 1.0))
        throw InvalidParameter("binary_entropy: argument must lie in [0, 1]");
    if (f == 0.0 || f == 1.0)
        return 0.0;
    return -f * std::log2(f) - (1.0 - f) * std::log2(1.0 - f);
}

// Smaller inverse branch of H: the unique f in [0, 1/2] with H(f) = rate.
// Bisection; H is strictly increasing on this interval.
inline double inverse_entropy(double rate) {
    if (!(rate >= 0.0 && rate <= 1.0))
        throw InvalidParameter("inverse_entropy: rate must lie in [0, 1]");
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < rate)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// One point of the rate / energy trade-off: sending at rate H(f) lets the
// fraction of 1s on the wire drop to f, which cuts transition energy by
// 100 * (1 - 2f / rate) percent against an uncoded wire at the same load
// (an uncoded stream carries rate/2 expected 1s per wire bit).
struct TradeoffPoint {
    double ones_fraction;
    double rate;
    double energy_reduction_pct;
};

// Samples the trade-off for f uniformly spaced in (0, 1/2]. The last point is
// always f = 1/2 (rate 1, no reduction).
inline std::vector<TradeoffPoint> tradeoff_curve(std::size_t sample_count) {
    if (sample_count == 0)
        throw InvalidParameter("tradeoff_curve: need at least one sample");
    std::vector<TradeoffPoint> pts;
    pts.reserve(sample_count);
    for (std::size_t i = 1; i <= sample_count; ++i) {
        double f = 0.5 * static_cast<double>(i) / static_cast<double>(sample_count);
        double rate = binary_entropy(f);
        pts.push_back({f, rate, 100.0 * (1.0 - 2.0 * f / rate)});
    }
    return pts;
}

// Expected 1 count per N-bit word when squeezing rate-R traffic into N wires:
// compressing to R*N bits and sending them raw leaves N*R/2 expected 1s,
// while coding across the full width gets down to H^-1(R) * N.
struct OnesBudget {
    double ones_compression;
    double ones_coding;
};

inline OnesBudget compression_vs_coding(double rate, double word_bits) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw InvalidParameter("compression_vs_coding: rate must lie in (0, 1]");
    if (!(word_bits > 0.0))
        throw InvalidParameter("compression_vs_coding: word size must be positive");
    return {word_bits * rate / 2.0, inverse_entropy(rate) * word_bits};
}

} // namespace lelc
