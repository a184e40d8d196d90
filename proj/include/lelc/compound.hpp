#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "lelc/bitstring.hpp"
#include "lelc/errors.hpp"
#include "lelc/mapping.hpp"

namespace lelc {

// Two-stage code for zero-heavy traffic. Stage one scans the payload in
// zero_word_bits words and collapses each all-zero word to a lone 1 bit;
// any other word is sent verbatim behind a 0 marker. Stage two pads the
// intermediate stream to whole bytes and runs it through an 8-in-9-out
// codebook map, which soaks up the 1s the markers introduced.
struct CompoundConfig {
    std::uint32_t zero_word_bits = 32;
    CodebookMap inner_map;

    void validate() const {
        if (zero_word_bits == 0)
            throw InvalidParameter("compound: zero-run word size must be positive");
        validate_map(inner_map);
        if (inner_map.k != 8 || inner_map.n != 9)
            throw InvalidParameter("compound: inner map must take 8-bit words to 9-bit codewords");
    }
};

// Stage one alone: marker bits plus verbatim non-zero words, unpadded.
inline BitString zero_run_compress(const BitString& payload, std::uint32_t zero_word_bits) {
    if (zero_word_bits == 0)
        throw InvalidParameter("compound: zero-run word size must be positive");
    if (payload.size() % zero_word_bits != 0)
        throw CodecError("payload length " + std::to_string(payload.size()) +
                         " is not a multiple of the zero-run word size " +
                         std::to_string(zero_word_bits));
    BitString out;
    for (std::size_t pos = 0; pos < payload.size(); pos += zero_word_bits) {
        BitString word = payload.slice(pos, zero_word_bits);
        if (weight(word) == 0) {
            out.push_back(true);
        } else {
            out.push_back(false);
            out.append(word);
        }
    }
    return out;
}

inline BitString compound_encode(const BitString& payload, const CompoundConfig& cfg) {
    cfg.validate();
    BitString intermediate = zero_run_compress(payload, cfg.zero_word_bits);
    while (intermediate.size() % 8 != 0)
        intermediate.push_back(false);
    return map_encode(intermediate, cfg.inner_map);
}

// payload_bits must come from the caller: the coded stream alone cannot tell
// trailing pad from data.
inline BitString compound_decode(const BitString& coded, const CompoundConfig& cfg,
                                 std::size_t payload_bits) {
    cfg.validate();
    if (payload_bits % cfg.zero_word_bits != 0)
        throw CodecError("payload length " + std::to_string(payload_bits) +
                         " is not a multiple of the zero-run word size " +
                         std::to_string(cfg.zero_word_bits));
    BitString intermediate = map_decode(coded, cfg.inner_map);

    BitString out;
    out.reserve(payload_bits);
    std::size_t pos = 0;
    while (out.size() < payload_bits) {
        if (pos >= intermediate.size())
            throw CodecError("coded stream ran out after " + std::to_string(out.size()) + " of " +
                             std::to_string(payload_bits) + " payload bits");
        if (intermediate[pos++]) {
            out.append(BitString(cfg.zero_word_bits));
        } else {
            if (pos + cfg.zero_word_bits > intermediate.size())
                throw CodecError("coded stream ends inside a verbatim word at bit " +
                                 std::to_string(pos));
            out.append(intermediate.slice(pos, cfg.zero_word_bits));
            pos += cfg.zero_word_bits;
        }
    }
    return out;
}

} // namespace lelc
