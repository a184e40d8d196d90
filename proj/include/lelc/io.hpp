#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lelc/bitstring.hpp"
#include "lelc/errors.hpp"
#include "lelc/histogram.hpp"
#include "lelc/mapping.hpp"
#include "lelc/metrics.hpp"
#include "lelc/prefix_code.hpp"

namespace lelc {

// Binary trace container. Version 1 carries equal-size payloads:
//
//   'L' 'E' 'L' 'C'  u8 version=1  u32le payload_bits  u32le payload_count
//   payload_count x ceil(payload_bits/8) bytes, MSB first, zero padded
//
// Version 2 adds a per-payload bit length table for coded streams whose
// sizes vary (or whose originals were group-extended); its payload_bits
// field holds the pre-coding payload size so decoders know where to stop:
//
//   'L' 'E' 'L' 'C'  u8 version=2  u32le payload_bits  u32le payload_count
//   payload_count x u32le bit lengths, then each payload byte-aligned
struct TraceData {
    std::uint8_t version = 1;
    std::uint32_t payload_bits = 0;
    std::vector<BitString> payloads;
};

namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

inline std::uint32_t get_u32(std::istream& in, const std::string& what) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw FormatError("trace: truncated " + what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline void write_payload_bytes(std::ostream& out, const BitString& payload) {
    auto bytes = payload.to_bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

inline BitString read_payload_bytes(std::istream& in, std::size_t bits, std::size_t index) {
    std::vector<std::uint8_t> bytes((bits + 7) / 8);
    if (!in.read(reinterpret_cast<char*>(bytes.data()),
                 static_cast<std::streamsize>(bytes.size())))
        throw FormatError("trace: truncated payload " + std::to_string(index));
    if (bits % 8 != 0 && (bytes.back() & ((1u << (8 - bits % 8)) - 1)) != 0)
        throw FormatError("trace: payload " + std::to_string(index) + " has non-zero pad bits");
    return BitString::from_bytes(bytes.data(), bits);
}

inline std::ifstream open_in(const std::string& path, bool binary) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in)
        throw FormatError("cannot open " + path);
    return in;
}

inline std::ofstream open_out(const std::string& path, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out)
        throw FormatError("cannot write " + path);
    return out;
}

} // namespace detail

// Writes a version-1 trace; every payload must have exactly payload_bits bits.
inline void write_trace(const std::string& path, const std::vector<BitString>& payloads,
                        std::uint32_t payload_bits) {
    for (std::size_t i = 0; i < payloads.size(); ++i)
        if (payloads[i].size() != payload_bits)
            throw InvalidParameter("trace: payload " + std::to_string(i) + " has " +
                                   std::to_string(payloads[i].size()) + " bits, expected " +
                                   std::to_string(payload_bits));
    auto out = detail::open_out(path, true);
    out.write("LELC", 4);
    out.put(1);
    detail::put_u32(out, payload_bits);
    detail::put_u32(out, static_cast<std::uint32_t>(payloads.size()));
    for (const auto& p : payloads)
        detail::write_payload_bytes(out, p);
    if (!out)
        throw FormatError("failed while writing " + path);
}

// Writes a version-2 trace: payload sizes vary, source_payload_bits records
// the pre-coding payload size.
inline void write_trace_varied(const std::string& path, const std::vector<BitString>& payloads,
                               std::uint32_t source_payload_bits) {
    auto out = detail::open_out(path, true);
    out.write("LELC", 4);
    out.put(2);
    detail::put_u32(out, source_payload_bits);
    detail::put_u32(out, static_cast<std::uint32_t>(payloads.size()));
    for (const auto& p : payloads)
        detail::put_u32(out, static_cast<std::uint32_t>(p.size()));
    for (const auto& p : payloads)
        detail::write_payload_bytes(out, p);
    if (!out)
        throw FormatError("failed while writing " + path);
}

inline TraceData read_trace(const std::string& path) {
    auto in = detail::open_in(path, true);
    char magic[4];
    if (!in.read(magic, 4) || std::string(magic, 4) != "LELC")
        throw FormatError(path + " is not a trace file (bad magic)");
    int version = in.get();
    if (version != 1 && version != 2)
        throw FormatError(path + ": unsupported trace version " + std::to_string(version));

    TraceData trace;
    trace.version = static_cast<std::uint8_t>(version);
    trace.payload_bits = detail::get_u32(in, "header");
    std::uint32_t count = detail::get_u32(in, "header");

    std::vector<std::uint32_t> lengths(count, trace.payload_bits);
    if (version == 2)
        for (std::uint32_t i = 0; i < count; ++i)
            lengths[i] = detail::get_u32(in, "length table");

    trace.payloads.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i)
        trace.payloads.push_back(detail::read_payload_bytes(in, lengths[i], i));
    return trace;
}

// Dataword histogram, text:
//
//   LELCHIST <k>
//   <k-bit dataword> <count>      (ascending value, zero counts omitted)
inline void write_histogram(const std::string& path, const DatawordHistogram& h) {
    auto out = detail::open_out(path, false);
    out << "LELCHIST " << h.k << "\n";
    for (std::size_t v = 0; v < h.counts.size(); ++v)
        if (h.counts[v] != 0)
            out << BitString::from_value(v, h.k).str() << " " << h.counts[v] << "\n";
    if (!out)
        throw FormatError("failed while writing " + path);
}

inline DatawordHistogram read_histogram(const std::string& path) {
    auto in = detail::open_in(path, false);
    std::string tag;
    std::uint32_t k = 0;
    if (!(in >> tag >> k) || tag != "LELCHIST")
        throw FormatError(path + " is not a histogram file");
    if (k == 0 || k > 20)
        throw FormatError(path + ": unsupported dataword size " + std::to_string(k));
    DatawordHistogram h(k);
    std::string bits;
    std::uint64_t count;
    while (in >> bits >> count) {
        if (bits.size() != k)
            throw FormatError(path + ": dataword " + bits + " is not " + std::to_string(k) +
                              " bits");
        h.counts[BitString::from_string(bits).to_value()] += count;
    }
    if (!in.eof() && in.fail())
        throw FormatError(path + ": malformed histogram line");
    return h;
}

// Codebook map, text:
//
//   LELCMAP <k> <n>
//   <n-bit codeword>              (one line per dataword value, in order)
inline void write_map(const std::string& path, const CodebookMap& map) {
    validate_map(map);
    auto out = detail::open_out(path, false);
    out << "LELCMAP " << map.k << " " << map.n << "\n";
    for (std::uint64_t c : map.codewords)
        out << BitString::from_value(c, map.n).str() << "\n";
    if (!out)
        throw FormatError("failed while writing " + path);
}

inline CodebookMap read_map(const std::string& path) {
    auto in = detail::open_in(path, false);
    std::string tag;
    CodebookMap map;
    if (!(in >> tag >> map.k >> map.n) || tag != "LELCMAP")
        throw FormatError(path + " is not a map file");
    if (map.k == 0 || map.k > 16 || map.n < map.k || map.n > 20)
        throw FormatError(path + ": unsupported map geometry");
    std::string bits;
    while (in >> bits) {
        if (bits.size() != map.n)
            throw FormatError(path + ": codeword " + bits + " is not " + std::to_string(map.n) +
                              " bits");
        map.codewords.push_back(BitString::from_string(bits).to_value());
    }
    if (map.codewords.size() != (std::size_t{1} << map.k))
        throw FormatError(path + ": expected " + std::to_string(std::size_t{1} << map.k) +
                          " codewords, found " + std::to_string(map.codewords.size()));
    try {
        validate_map(map);
    } catch (const InvalidParameter& e) {
        throw FormatError(path + ": " + e.what());
    }
    return map;
}

// Prefix code table, text:
//
//   LELCPFX <entry_count>
//   <path> <codeword>
inline void write_prefix_table(const std::string& path, const PrefixCodeTable& table) {
    auto out = detail::open_out(path, false);
    out << "LELCPFX " << table.entries.size() << "\n";
    for (const auto& e : table.entries)
        out << e.path.str() << " " << e.codeword.str() << "\n";
    if (!out)
        throw FormatError("failed while writing " + path);
}

inline PrefixCodeTable read_prefix_table(const std::string& path) {
    auto in = detail::open_in(path, false);
    std::string tag;
    std::size_t count = 0;
    if (!(in >> tag >> count) || tag != "LELCPFX")
        throw FormatError(path + " is not a prefix table file");
    PrefixCodeTable table;
    std::string p, c;
    while (in >> p >> c)
        table.entries.push_back({BitString::from_string(p), BitString::from_string(c)});
    if (table.entries.size() != count)
        throw FormatError(path + ": header promises " + std::to_string(count) +
                          " entries, found " + std::to_string(table.entries.size()));
    auto report = validate(table);
    if (!report.ok())
        throw FormatError(path + ": " + report.violations.front().message);
    return table;
}

// Crosstalk weight table, text: "LELCXT" then "<class> <weight>" lines.
// Omitted classes keep their defaults.
inline CrosstalkWeightTable read_crosstalk_weights(const std::string& path) {
    auto in = detail::open_in(path, false);
    std::string tag;
    if (!(in >> tag) || tag != "LELCXT")
        throw FormatError(path + " is not a crosstalk weight file");
    CrosstalkWeightTable w;
    std::string cls;
    double value;
    while (in >> cls >> value) {
        if (cls == "same_direction")
            w.same_direction = value;
        else if (cls == "victim_only")
            w.victim_only = value;
        else if (cls == "opposite_direction")
            w.opposite_direction = value;
        else if (cls == "neighbor_only")
            w.neighbor_only = value;
        else if (cls == "both_idle")
            w.both_idle = value;
        else
            throw FormatError(path + ": unknown crosstalk class " + cls);
    }
    if (!in.eof() && in.fail())
        throw FormatError(path + ": malformed weight line");
    try {
        w.validate();
    } catch (const InvalidParameter& e) {
        throw FormatError(path + ": " + e.what());
    }
    return w;
}

// Injection trace: one cycle number per line.
inline std::vector<std::uint64_t> read_injections(const std::string& path) {
    auto in = detail::open_in(path, false);
    std::vector<std::uint64_t> cycles;
    std::uint64_t c;
    while (in >> c)
        cycles.push_back(c);
    if (!in.eof() && in.fail())
        throw FormatError(path + ": malformed injection line");
    for (std::size_t i = 1; i < cycles.size(); ++i)
        if (cycles[i] < cycles[i - 1])
            throw FormatError(path + ": injection cycles must be sorted, line " +
                              std::to_string(i + 1) + " goes backwards");
    return cycles;
}

// key=value report lines; doubles use six significant decimals.
inline std::string kv(const std::string& key, const std::string& value) {
    return key + "=" + value;
}

inline std::string kv(const std::string& key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return key + "=" + buf;
}

inline std::string kv(const std::string& key, std::uint64_t value) {
    return key + "=" + std::to_string(value);
}

} // namespace lelc
