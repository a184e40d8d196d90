#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "lelc/bitstring.hpp"
#include "lelc/errors.hpp"

namespace lelc {

// Flip-N-Write: a k-bit dataword whose weight exceeds floor(k/2) is sent
// inverted, and a trailing flag bit records the inversion. A codeword never
// carries more than ceil(k/2) ones, and never more ones than its dataword.

struct FnwConfig {
    std::uint32_t k = 8;   // dataword bits per flag
    std::uint32_t levels = 1;
    std::uint32_t f = 8;   // first-level flags per second-level flag

    void validate() const {
        if (k == 0)
            throw InvalidParameter("fnw: dataword size must be positive");
        if (levels != 1 && levels != 2)
            throw InvalidParameter("fnw: only one or two levels are supported");
        if (levels == 2 && f == 0)
            throw InvalidParameter("fnw: group size must be positive");
    }
};

namespace detail {

inline void fnw_append_word(BitString& out, const BitString& word, std::uint32_t k) {
    if (weight(word) > k / 2) {
        out.append(word.complement());
        out.push_back(true);
    } else {
        out.append(word);
        out.push_back(false);
    }
}

inline void require_multiple(std::size_t bits, std::size_t group, const char* what) {
    if (bits % group != 0)
        throw CodecError(std::string("fnw: payload length ") + std::to_string(bits) +
                         " is not a multiple of the " + what + " size " + std::to_string(group));
}

} // namespace detail

// Encodes payload as consecutive (k+1)-bit codewords: transformed dataword
// first, flag last. The payload must divide evenly into k-bit datawords.
inline BitString fnw_encode(const BitString& payload, const FnwConfig& cfg) {
    cfg.validate();
    detail::require_multiple(payload.size(), cfg.k, "dataword");
    BitString out;
    out.reserve(payload.size() / cfg.k * (cfg.k + 1));
    for (std::size_t pos = 0; pos < payload.size(); pos += cfg.k)
        detail::fnw_append_word(out, payload.slice(pos, cfg.k), cfg.k);
    return out;
}

inline BitString fnw_decode(const BitString& coded, const FnwConfig& cfg) {
    cfg.validate();
    detail::require_multiple(coded.size(), cfg.k + 1, "codeword");
    BitString out;
    out.reserve(coded.size() / (cfg.k + 1) * cfg.k);
    for (std::size_t pos = 0; pos < coded.size(); pos += cfg.k + 1) {
        BitString word = coded.slice(pos, cfg.k);
        out.append(coded[pos + cfg.k] ? word.complement() : word);
    }
    return out;
}

// Two-level variant: groups of f datawords are encoded as above, then the f
// flag bits are themselves treated as a dataword. If their weight exceeds
// floor(f/2) they are complemented in place and the appended second-level
// flag is set. Each group spans f*(k+1)+1 coded bits.
inline BitString fnw2_encode(const BitString& payload, const FnwConfig& cfg) {
    cfg.validate();
    std::size_t group_data = static_cast<std::size_t>(cfg.k) * cfg.f;
    detail::require_multiple(payload.size(), group_data, "group");
    std::size_t group_coded = static_cast<std::size_t>(cfg.f) * (cfg.k + 1) + 1;

    BitString out;
    out.reserve(payload.size() / group_data * group_coded);
    for (std::size_t pos = 0; pos < payload.size(); pos += group_data) {
        std::size_t group_start = out.size();
        for (std::uint32_t w = 0; w < cfg.f; ++w)
            detail::fnw_append_word(out, payload.slice(pos + w * cfg.k, cfg.k), cfg.k);

        std::size_t flag_weight = 0;
        for (std::uint32_t w = 0; w < cfg.f; ++w)
            flag_weight += out[group_start + w * (cfg.k + 1) + cfg.k];
        if (flag_weight > cfg.f / 2) {
            for (std::uint32_t w = 0; w < cfg.f; ++w)
                out.flip(group_start + w * (cfg.k + 1) + cfg.k);
            out.push_back(true);
        } else {
            out.push_back(false);
        }
    }
    return out;
}

inline BitString fnw2_decode(const BitString& coded, const FnwConfig& cfg) {
    cfg.validate();
    std::size_t group_coded = static_cast<std::size_t>(cfg.f) * (cfg.k + 1) + 1;
    detail::require_multiple(coded.size(), group_coded, "coded group");

    BitString out;
    out.reserve(coded.size() / group_coded * cfg.k * cfg.f);
    for (std::size_t pos = 0; pos < coded.size(); pos += group_coded) {
        bool flags_flipped = coded[pos + group_coded - 1];
        for (std::uint32_t w = 0; w < cfg.f; ++w) {
            std::size_t word_pos = pos + w * (cfg.k + 1);
            BitString word = coded.slice(word_pos, cfg.k);
            bool flag = coded[word_pos + cfg.k] ^ flags_flipped;
            out.append(flag ? word.complement() : word);
        }
    }
    return out;
}

} // namespace lelc
