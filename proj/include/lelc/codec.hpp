#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "lelc/bitstring.hpp"
#include "lelc/compound.hpp"
#include "lelc/errors.hpp"
#include "lelc/fnw.hpp"
#include "lelc/mapping.hpp"
#include "lelc/prefix_code.hpp"

namespace lelc {

// Uniform payload-level view of every line code. The wrappers accept any
// payload length: a payload that does not divide into the codec's group is
// zero-extended to the next boundary before encoding, and decode truncates
// back once told the original payload size. group_bits reports that boundary
// so rate accounting can charge the extended length; coded_bits_fixed is set
// when the coded size depends only on the payload size, which lets trace
// files skip per-payload length records.
class Codec {
public:
    virtual ~Codec() = default;

    virtual std::string name() const = 0;
    virtual std::size_t group_bits() const { return 1; }
    virtual BitString encode(const BitString& payload) const = 0;
    virtual BitString decode(const BitString& coded, std::size_t payload_bits) const = 0;

    // Coded size for a padded payload size, when static.
    virtual std::optional<std::size_t> coded_bits_fixed(std::size_t padded_bits) const = 0;

    std::size_t padded_bits(std::size_t payload_bits) const {
        std::size_t g = group_bits();
        return (payload_bits + g - 1) / g * g;
    }

    // Original payload size recoverable from a fixed-rate coded size.
    std::optional<std::size_t> source_bits_for(std::size_t coded_bits) const {
        std::size_t g = group_bits();
        auto per_group = coded_bits_fixed(g);
        if (!per_group || *per_group == 0)
            return std::nullopt;
        if (coded_bits % *per_group != 0)
            return std::nullopt;
        return coded_bits / *per_group * g;
    }

protected:
    BitString pad_to_group(const BitString& payload) const {
        std::size_t target = padded_bits(payload.size());
        if (target == payload.size())
            return payload;
        BitString padded = payload;
        while (padded.size() < target)
            padded.push_back(false);
        return padded;
    }

    static BitString truncate(BitString decoded, std::size_t payload_bits, const char* what) {
        if (decoded.size() < payload_bits)
            throw CodecError(std::string(what) + ": decoded only " +
                             std::to_string(decoded.size()) + " of " +
                             std::to_string(payload_bits) + " payload bits");
        if (decoded.size() == payload_bits)
            return decoded;
        return decoded.slice(0, payload_bits);
    }
};

class IdentityCodec final : public Codec {
public:
    std::string name() const override { return "identity"; }
    BitString encode(const BitString& payload) const override { return payload; }
    BitString decode(const BitString& coded, std::size_t payload_bits) const override {
        return truncate(coded, payload_bits, "identity");
    }
    std::optional<std::size_t> coded_bits_fixed(std::size_t padded_bits) const override {
        return padded_bits;
    }
};

class FnwCodec final : public Codec {
public:
    explicit FnwCodec(std::uint32_t k) : cfg_{k, 1, k} { cfg_.validate(); }

    std::string name() const override { return "fnw:" + std::to_string(cfg_.k); }
    std::size_t group_bits() const override { return cfg_.k; }
    BitString encode(const BitString& payload) const override {
        return fnw_encode(pad_to_group(payload), cfg_);
    }
    BitString decode(const BitString& coded, std::size_t payload_bits) const override {
        return truncate(fnw_decode(coded, cfg_), payload_bits, "fnw");
    }
    std::optional<std::size_t> coded_bits_fixed(std::size_t padded_bits) const override {
        return padded_bits / cfg_.k * (cfg_.k + 1);
    }

private:
    FnwConfig cfg_;
};

class Fnw2Codec final : public Codec {
public:
    Fnw2Codec(std::uint32_t k, std::uint32_t f) : cfg_{k, 2, f} { cfg_.validate(); }

    std::string name() const override {
        return "fnw2:" + std::to_string(cfg_.k) + "," + std::to_string(cfg_.f);
    }
    std::size_t group_bits() const override {
        return static_cast<std::size_t>(cfg_.k) * cfg_.f;
    }
    BitString encode(const BitString& payload) const override {
        return fnw2_encode(pad_to_group(payload), cfg_);
    }
    BitString decode(const BitString& coded, std::size_t payload_bits) const override {
        return truncate(fnw2_decode(coded, cfg_), payload_bits, "fnw2");
    }
    std::optional<std::size_t> coded_bits_fixed(std::size_t padded_bits) const override {
        return padded_bits / group_bits() * (static_cast<std::size_t>(cfg_.f) * (cfg_.k + 1) + 1);
    }

private:
    FnwConfig cfg_;
};

class MapCodec final : public Codec {
public:
    explicit MapCodec(CodebookMap map, std::string label = "map")
        : map_(std::move(map)), label_(std::move(label)) {
        validate_map(map_);
    }

    std::string name() const override { return label_; }
    std::size_t group_bits() const override { return map_.k; }
    BitString encode(const BitString& payload) const override {
        return map_encode(pad_to_group(payload), map_);
    }
    BitString decode(const BitString& coded, std::size_t payload_bits) const override {
        return truncate(map_decode(coded, map_), payload_bits, "map");
    }
    std::optional<std::size_t> coded_bits_fixed(std::size_t padded_bits) const override {
        return padded_bits / map_.k * map_.n;
    }

    const CodebookMap& map() const { return map_; }

private:
    CodebookMap map_;
    std::string label_;
};

// Tree code over the whole payload. Variable rate; a payload whose tail does
// not complete a path is encoded as if zero bits followed, mirroring the
// chunked framing rule, and decode truncates using payload_bits.
class PrefixStreamCodec final : public Codec {
public:
    PrefixStreamCodec(PrefixCodeTable table, std::string label)
        : table_(std::move(table)), label_(std::move(label)) {
        auto report = validate(table_);
        if (!report.ok())
            throw InvalidParameter("prefix table is not sound: " +
                                   report.violations.front().message);
    }

    std::string name() const override { return label_; }
    BitString encode(const BitString& payload) const override {
        try {
            return stream_encode(payload, table_);
        } catch (const IncompleteParse& dangling) {
            BitString head = stream_encode(payload.slice(0, dangling.offset), table_);
            // Zero-extend the residue to the nearest leaf.
            BitString tail = dangling.residue;
            while (true) {
                try {
                    head.append(stream_encode(tail, table_));
                    return head;
                } catch (const IncompleteParse&) {
                    tail.push_back(false);
                }
            }
        }
    }
    BitString decode(const BitString& coded, std::size_t payload_bits) const override {
        return truncate(stream_decode(coded, table_), payload_bits, label_.c_str());
    }
    std::optional<std::size_t> coded_bits_fixed(std::size_t) const override {
        return std::nullopt;
    }

    const PrefixCodeTable& table() const { return table_; }

private:
    PrefixCodeTable table_;
    std::string label_;
};

// Tree code in fixed-size frames.
class ChunkedPrefixCodec final : public Codec {
public:
    ChunkedPrefixCodec(PrefixCodeTable table, ChunkFrameConfig cfg, std::string label)
        : table_(std::move(table)), cfg_(cfg), label_(std::move(label)) {
        chunked_encode(BitString(cfg_.dataword_chunk_bits), table_, cfg_);
    }

    std::string name() const override { return label_; }
    std::size_t group_bits() const override { return cfg_.dataword_chunk_bits; }
    BitString encode(const BitString& payload) const override {
        return chunked_encode(pad_to_group(payload), table_, cfg_);
    }
    BitString decode(const BitString& coded, std::size_t payload_bits) const override {
        return truncate(chunked_decode(coded, table_, cfg_), payload_bits, label_.c_str());
    }
    std::optional<std::size_t> coded_bits_fixed(std::size_t padded_bits) const override {
        return padded_bits / cfg_.dataword_chunk_bits * cfg_.codeword_chunk_bits;
    }

private:
    PrefixCodeTable table_;
    ChunkFrameConfig cfg_;
    std::string label_;
};

class CompoundCodec final : public Codec {
public:
    explicit CompoundCodec(CompoundConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

    std::string name() const override { return "compound:" + std::to_string(cfg_.zero_word_bits); }
    std::size_t group_bits() const override { return cfg_.zero_word_bits; }
    BitString encode(const BitString& payload) const override {
        return compound_encode(pad_to_group(payload), cfg_);
    }
    BitString decode(const BitString& coded, std::size_t payload_bits) const override {
        return truncate(compound_decode(coded, cfg_, padded_bits(payload_bits)), payload_bits,
                        "compound");
    }
    std::optional<std::size_t> coded_bits_fixed(std::size_t) const override {
        return std::nullopt;
    }

private:
    CompoundConfig cfg_;
};

inline std::unique_ptr<Codec> make_tc1_codec() {
    return std::make_unique<PrefixStreamCodec>(builtin_tc1(), "tc1");
}

inline std::unique_ptr<Codec> make_tc2_codec() {
    return std::make_unique<PrefixStreamCodec>(builtin_tc2(), "tc2");
}

inline std::unique_ptr<Codec> make_tc1_chunked_codec() {
    return std::make_unique<ChunkedPrefixCodec>(builtin_tc1(), ChunkFrameConfig{}, "tc1p");
}

} // namespace lelc
