#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lelc/bitstring.hpp"
#include "lelc/errors.hpp"

namespace lelc {

// A prefix code given as (path, codeword) pairs. Paths are the dataword-side
// strings; they must form the leaves of a full binary tree (Kraft sum exactly
// one), so any bit stream parses greedily and unambiguously. Codewords must
// be prefix-free so the coded stream parses back.

struct PrefixEntry {
    BitString path;
    BitString codeword;
};

struct PrefixCodeTable {
    std::vector<PrefixEntry> entries;
};

struct PrefixViolation {
    enum class Kind {
        empty_table,
        empty_word,
        duplicate_path,
        path_prefix_conflict,
        kraft_not_one,
        duplicate_codeword,
        codeword_prefix_conflict,
        weight_guarantee
    };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<PrefixViolation> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline bool is_prefix(const BitString& a, const BitString& b) {
    if (a.size() > b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return false;
    return true;
}

} // namespace detail

// Checks structural soundness; with require_weight_monotone also checks that
// no codeword outweighs its path.
inline ValidationReport validate(const PrefixCodeTable& table, bool require_weight_monotone = false) {
    using Kind = PrefixViolation::Kind;
    ValidationReport report;
    auto add = [&](Kind kind, std::string msg) { report.violations.push_back({kind, std::move(msg)}); };

    if (table.entries.empty()) {
        add(Kind::empty_table, "table has no entries");
        return report;
    }

    std::size_t max_path = 0;
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        const auto& e = table.entries[i];
        if (e.path.empty() || e.codeword.empty())
            add(Kind::empty_word, "entry " + std::to_string(i) + " has an empty path or codeword");
        if (e.path.size() > 60)
            throw InvalidParameter("paths longer than 60 bits are not supported");
        max_path = std::max(max_path, e.path.size());
    }
    if (!report.ok())
        return report;

    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        for (std::size_t j = i + 1; j < table.entries.size(); ++j) {
            const auto& a = table.entries[i];
            const auto& b = table.entries[j];
            if (a.path == b.path)
                add(Kind::duplicate_path, "entries " + std::to_string(i) + " and " +
                                              std::to_string(j) + " share path " + a.path.str());
            else if (detail::is_prefix(a.path, b.path) || detail::is_prefix(b.path, a.path))
                add(Kind::path_prefix_conflict, "path " + a.path.str() + " (entry " +
                                                    std::to_string(i) + ") prefixes path " +
                                                    b.path.str() + " (entry " + std::to_string(j) + ")");
            if (a.codeword == b.codeword)
                add(Kind::duplicate_codeword, "entries " + std::to_string(i) + " and " +
                                                  std::to_string(j) + " share codeword " +
                                                  a.codeword.str());
            else if (detail::is_prefix(a.codeword, b.codeword) ||
                     detail::is_prefix(b.codeword, a.codeword))
                add(Kind::codeword_prefix_conflict,
                    "codeword " + a.codeword.str() + " (entry " + std::to_string(i) +
                        ") prefixes codeword " + b.codeword.str() + " (entry " + std::to_string(j) + ")");
        }
    }

    // Exact Kraft sum: scale each term to 2^(max_path - len) and compare
    // against 2^max_path.
    std::uint64_t kraft = 0;
    bool overflow = false;
    for (const auto& e : table.entries) {
        std::uint64_t term = std::uint64_t{1} << (max_path - e.path.size());
        if (kraft + term < kraft)
            overflow = true;
        kraft += term;
    }
    if (overflow || kraft != (std::uint64_t{1} << max_path))
        add(Kind::kraft_not_one, "path lengths do not fill the tree: Kraft sum is " +
                                     std::to_string(kraft) + "/" +
                                     std::to_string(std::uint64_t{1} << max_path));

    if (require_weight_monotone)
        for (std::size_t i = 0; i < table.entries.size(); ++i) {
            const auto& e = table.entries[i];
            if (weight(e.codeword) > weight(e.path))
                add(Kind::weight_guarantee, "entry " + std::to_string(i) + ": codeword " +
                                                e.codeword.str() + " outweighs path " + e.path.str());
        }

    return report;
}

namespace detail {

// Plain binary trie; used for both the path side and the codeword side.
struct Trie {
    struct Node {
        int child[2] = {-1, -1};
        int entry = -1;
    };
    std::vector<Node> nodes;

    Trie() { nodes.emplace_back(); }

    void insert(const BitString& word, int entry) {
        int node = 0;
        for (std::size_t i = 0; i < word.size(); ++i) {
            int b = word[i];
            if (nodes[node].child[b] < 0) {
                nodes[node].child[b] = static_cast<int>(nodes.size());
                nodes.emplace_back();
            }
            node = nodes[node].child[b];
        }
        nodes[node].entry = entry;
    }
};

inline Trie path_trie(const PrefixCodeTable& table) {
    Trie t;
    for (std::size_t i = 0; i < table.entries.size(); ++i)
        t.insert(table.entries[i].path, static_cast<int>(i));
    return t;
}

inline Trie codeword_trie(const PrefixCodeTable& table) {
    Trie t;
    for (std::size_t i = 0; i < table.entries.size(); ++i)
        t.insert(table.entries[i].codeword, static_cast<int>(i));
    return t;
}

inline void require_valid(const PrefixCodeTable& table) {
    auto report = validate(table);
    if (!report.ok())
        throw InvalidParameter("prefix table is not sound: " + report.violations.front().message);
}

} // namespace detail

// Raised when a stream ends in the middle of a path; carries the unconsumed
// tail so callers can frame it themselves.
struct IncompleteParse : CodecError {
    BitString residue;
    std::size_t offset;

    IncompleteParse(BitString residue_bits, std::size_t at)
        : CodecError("input ends mid-path at bit " + std::to_string(at) + " with residue " +
                     residue_bits.str()),
          residue(std::move(residue_bits)),
          offset(at) {}
};

// Greedy parse of the payload into paths, emitting each leaf's codeword.
inline BitString stream_encode(const BitString& payload, const PrefixCodeTable& table) {
    detail::require_valid(table);
    detail::Trie trie = detail::path_trie(table);

    BitString out;
    std::size_t pos = 0;
    while (pos < payload.size()) {
        std::size_t start = pos;
        int node = 0;
        while (trie.nodes[node].entry < 0) {
            if (pos == payload.size())
                throw IncompleteParse(payload.slice(start, payload.size() - start), start);
            node = trie.nodes[node].child[payload[pos++]];
        }
        out.append(table.entries[trie.nodes[node].entry].codeword);
    }
    return out;
}

// Parses a concatenation of codewords back into the matching paths.
inline BitString stream_decode(const BitString& coded, const PrefixCodeTable& table) {
    detail::require_valid(table);
    detail::Trie trie = detail::codeword_trie(table);

    BitString out;
    std::size_t pos = 0;
    while (pos < coded.size()) {
        std::size_t start = pos;
        int node = 0;
        while (trie.nodes[node].entry < 0) {
            if (pos == coded.size())
                throw CodecError("coded stream ends mid-codeword at bit " + std::to_string(start));
            int next = trie.nodes[node].child[coded[pos]];
            if (next < 0)
                throw CodecError("no codeword matches the coded stream at bit " +
                                 std::to_string(start));
            node = next;
            ++pos;
        }
        out.append(table.entries[trie.nodes[node].entry].path);
    }
    return out;
}

namespace detail {

inline PrefixCodeTable make_table(std::initializer_list<std::pair<const char*, const char*>> rows) {
    PrefixCodeTable t;
    for (const auto& [path, codeword] : rows)
        t.entries.push_back({BitString::from_string(path), BitString::from_string(codeword)});
    return t;
}

} // namespace detail

// Ten-leaf tree with fixed 4-bit codewords. Balanced on the 0-heavy side
// (three-bit paths cost four bits) and compressing on runs of 1s (a
// five-bit path costs four bits), so the rate floats between 3/4 and 5/4.
inline const PrefixCodeTable& builtin_tc1() {
    static const PrefixCodeTable table = detail::make_table({
        {"000", "0000"},
        {"001", "0001"},
        {"010", "0010"},
        {"011", "0011"},
        {"100", "0100"},
        {"101", "0101"},
        {"110", "0110"},
        {"1110", "0111"},
        {"11110", "1011"},
        {"11111", "1101"},
    });
    return table;
}

// Twelve-leaf variant that spends no redundancy on the all-zero dataword
// (0000 maps to itself) and stretches to six-bit paths on runs of 1s, for a
// rate between 3/4 and 6/4.
inline const PrefixCodeTable& builtin_tc2() {
    static const PrefixCodeTable table = detail::make_table({
        {"0000", "0000"},
        {"0001", "0001"},
        {"001", "0010"},
        {"010", "0100"},
        {"011", "0011"},
        {"100", "1000"},
        {"101", "0101"},
        {"110", "0110"},
        {"1110", "0111"},
        {"11110", "1011"},
        {"111110", "1101"},
        {"111111", "1110"},
    });
    return table;
}

// Fixed-size framing for a prefix code with equal-length codewords: each
// dataword_chunk_bits of payload become exactly codeword_chunk_bits on the
// wire, so flit arithmetic stays static despite the variable-rate code.
struct ChunkFrameConfig {
    std::uint32_t dataword_chunk_bits = 32;
    std::uint32_t codeword_chunk_bits = 42;
};

namespace detail {

struct ChunkCodeInfo {
    std::size_t min_path = 0;
    std::size_t codeword_bits = 0;
};

inline ChunkCodeInfo chunk_code_info(const PrefixCodeTable& table, const ChunkFrameConfig& cfg) {
    require_valid(table);
    ChunkCodeInfo info;
    info.min_path = table.entries.front().path.size();
    info.codeword_bits = table.entries.front().codeword.size();
    for (const auto& e : table.entries) {
        info.min_path = std::min(info.min_path, e.path.size());
        if (e.codeword.size() != info.codeword_bits)
            throw InvalidParameter("chunked framing needs equal-length codewords");
    }
    if (cfg.dataword_chunk_bits == 0)
        throw InvalidParameter("dataword chunk size must be positive");

    // Worst case over every feasible parse: c codewords plus a raw tail.
    std::size_t d = cfg.dataword_chunk_bits;
    std::size_t worst = 0;
    for (std::size_t c = 0; c <= d / info.min_path; ++c) {
        std::size_t tail = d - c * info.min_path;
        if (tail >= info.min_path)
            tail = info.min_path - 1;
        worst = std::max(worst, c * info.codeword_bits + tail);
    }
    if (cfg.codeword_chunk_bits < worst)
        throw InvalidParameter("codeword chunk of " + std::to_string(cfg.codeword_chunk_bits) +
                               " bits cannot hold the worst-case frame of " + std::to_string(worst));
    return info;
}

} // namespace detail

// Encodes payload chunk by chunk into fixed-size frames. Within a chunk the
// parse is greedy; if fewer than min-path bits remain they are emitted raw,
// and a parse that runs off the chunk end is completed with virtual 0 bits
// (the decoder truncates the final path back). Frames are zero-padded.
inline BitString chunked_encode(const BitString& payload, const PrefixCodeTable& table,
                                const ChunkFrameConfig& cfg) {
    auto info = detail::chunk_code_info(table, cfg);
    if (payload.size() % cfg.dataword_chunk_bits != 0)
        throw CodecError("payload length " + std::to_string(payload.size()) +
                         " is not a multiple of the chunk size " +
                         std::to_string(cfg.dataword_chunk_bits));
    detail::Trie trie = detail::path_trie(table);

    BitString out;
    out.reserve(payload.size() / cfg.dataword_chunk_bits * cfg.codeword_chunk_bits);
    for (std::size_t chunk_start = 0; chunk_start < payload.size();
         chunk_start += cfg.dataword_chunk_bits) {
        std::size_t chunk_end = chunk_start + cfg.dataword_chunk_bits;
        std::size_t frame_start = out.size();
        std::size_t pos = chunk_start;
        while (pos < chunk_end) {
            if (chunk_end - pos < info.min_path) {
                while (pos < chunk_end)
                    out.push_back(payload[pos++]);
                break;
            }
            int node = 0;
            while (trie.nodes[node].entry < 0) {
                // Ran off the chunk: descend along 0 children to the nearest
                // leaf as if the chunk were zero-extended.
                if (pos == chunk_end) {
                    while (trie.nodes[node].entry < 0)
                        node = trie.nodes[node].child[0];
                    break;
                }
                node = trie.nodes[node].child[payload[pos++]];
            }
            out.append(table.entries[trie.nodes[node].entry].codeword);
        }
        while (out.size() < frame_start + cfg.codeword_chunk_bits)
            out.push_back(false);
    }
    return out;
}

inline BitString chunked_decode(const BitString& coded, const PrefixCodeTable& table,
                                const ChunkFrameConfig& cfg) {
    auto info = detail::chunk_code_info(table, cfg);
    if (coded.size() % cfg.codeword_chunk_bits != 0)
        throw CodecError("coded length " + std::to_string(coded.size()) +
                         " is not a multiple of the frame size " +
                         std::to_string(cfg.codeword_chunk_bits));

    std::vector<int> by_value(std::size_t{1} << info.codeword_bits, -1);
    for (std::size_t i = 0; i < table.entries.size(); ++i)
        by_value[table.entries[i].codeword.to_value()] = static_cast<int>(i);

    BitString out;
    out.reserve(coded.size() / cfg.codeword_chunk_bits * cfg.dataword_chunk_bits);
    std::size_t frame_count = coded.size() / cfg.codeword_chunk_bits;
    for (std::size_t frame = 0; frame < frame_count; ++frame) {
        std::size_t frame_start = frame * cfg.codeword_chunk_bits;
        std::size_t fpos = 0;
        std::size_t produced = 0;
        while (produced < cfg.dataword_chunk_bits) {
            std::size_t remaining = cfg.dataword_chunk_bits - produced;
            if (remaining < info.min_path) {
                for (std::size_t i = 0; i < remaining; ++i)
                    out.push_back(coded[frame_start + fpos + i]);
                produced += remaining;
                break;
            }
            if (fpos + info.codeword_bits > cfg.codeword_chunk_bits)
                throw CodecError("frame " + std::to_string(frame) + " is truncated");
            auto value = coded.value_at(frame_start + fpos, info.codeword_bits);
            int entry = by_value[value];
            if (entry < 0)
                throw CodecError("frame " + std::to_string(frame) + ": unknown codeword " +
                                 BitString::from_value(value, info.codeword_bits).str());
            fpos += info.codeword_bits;
            const BitString& path = table.entries[entry].path;
            std::size_t take = std::min(path.size(), remaining);
            for (std::size_t i = 0; i < take; ++i)
                out.push_back(path[i]);
            produced += take;
        }
    }
    return out;
}

} // namespace lelc
