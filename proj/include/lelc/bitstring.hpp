#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "lelc/errors.hpp"

namespace lelc {

// Ordered bit sequence with an explicit length. Index 0 is the first bit on
// the wire; when packing to bytes, bit 0 lands in the MSB of byte 0.
//
// Stored one byte per bit. Payloads in this code base are a few hundred bits,
// so clarity beats packing.
class BitString {
public:
    BitString() = default;

    explicit BitString(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}

    BitString(std::initializer_list<int> init) {
        bits_.reserve(init.size());
        for (int b : init)
            bits_.push_back(b ? 1 : 0);
    }

    // Parses a string of '0'/'1' characters.
    static BitString from_string(const std::string& s) {
        BitString out;
        out.bits_.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1')
                throw InvalidParameter("bit string may only contain 0 and 1, got '" + s + "'");
            out.bits_.push_back(c == '1' ? 1 : 0);
        }
        return out;
    }

    // Width-bit big-endian expansion of value: bit 0 of the result is the MSB.
    static BitString from_value(std::uint64_t value, std::size_t width) {
        if (width > 64)
            throw InvalidParameter("bit width > 64");
        if (width < 64 && (value >> width) != 0)
            throw InvalidParameter("value does not fit in " + std::to_string(width) + " bits");
        BitString out;
        out.bits_.resize(width);
        for (std::size_t i = 0; i < width; ++i)
            out.bits_[i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
        return out;
    }

    // First bit_count bits of a byte buffer, MSB of each byte first.
    static BitString from_bytes(const std::uint8_t* data, std::size_t bit_count) {
        BitString out;
        out.bits_.resize(bit_count);
        for (std::size_t i = 0; i < bit_count; ++i)
            out.bits_[i] = static_cast<std::uint8_t>((data[i / 8] >> (7 - i % 8)) & 1u);
        return out;
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }

    void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1u; }

    void push_back(bool b) { bits_.push_back(b ? 1 : 0); }

    void append(const BitString& other) {
        bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
    }

    void reserve(std::size_t n) { bits_.reserve(n); }

    BitString slice(std::size_t pos, std::size_t len) const {
        if (pos + len > bits_.size())
            throw InvalidParameter("slice out of range");
        BitString out;
        out.bits_.assign(bits_.begin() + pos, bits_.begin() + pos + len);
        return out;
    }

    // Bitwise complement of the whole string.
    BitString complement() const {
        BitString out(*this);
        for (auto& b : out.bits_)
            b ^= 1u;
        return out;
    }

    // Interprets the whole string (or a slice of it) as a big-endian value.
    std::uint64_t to_value() const { return value_at(0, bits_.size()); }

    std::uint64_t value_at(std::size_t pos, std::size_t len) const {
        if (len > 64)
            throw InvalidParameter("value wider than 64 bits");
        if (pos + len > bits_.size())
            throw InvalidParameter("value_at out of range");
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < len; ++i)
            v = (v << 1) | bits_[pos + i];
        return v;
    }

    // Packs to bytes, MSB first, final byte zero-padded.
    std::vector<std::uint8_t> to_bytes() const {
        std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i])
                out[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
        return out;
    }

    std::string str() const {
        std::string s;
        s.reserve(bits_.size());
        for (auto b : bits_)
            s.push_back(b ? '1' : '0');
        return s;
    }

    friend bool operator==(const BitString& a, const BitString& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const BitString& a, const BitString& b) { return !(a == b); }

private:
    std::vector<std::uint8_t> bits_;
};

inline BitString operator+(const BitString& a, const BitString& b) {
    BitString out(a);
    out.append(b);
    return out;
}

// Number of 1 bits.
inline std::size_t weight(const BitString& b) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        w += b[i];
    return w;
}

// Splits b into consecutive k-bit datawords plus the (possibly empty) tail of
// fewer than k leftover bits.
inline std::pair<std::vector<BitString>, BitString> chunk(const BitString& b, std::size_t k) {
    if (k == 0)
        throw InvalidParameter("chunk size must be positive");
    std::vector<BitString> words;
    words.reserve(b.size() / k);
    std::size_t pos = 0;
    while (pos + k <= b.size()) {
        words.push_back(b.slice(pos, k));
        pos += k;
    }
    return {std::move(words), b.slice(pos, b.size() - pos)};
}

} // namespace lelc
