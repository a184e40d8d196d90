// lelc: line-code toolkit for on-chip link traces.
//
// Subcommands cover the whole pipeline: profile a trace into a dataword
// histogram, synthesize traces from a histogram, generate codebook maps,
// encode/decode traces with any of the built-in codes, analyze rate/energy/
// crosstalk, print the theoretical rate-energy curve, and sweep a link
// throttling threshold.

#include <cstdint>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lelc/codec.hpp"
#include "lelc/histogram.hpp"
#include "lelc/io.hpp"
#include "lelc/metrics.hpp"
#include "lelc/theory.hpp"
#include "lelc/throttle.hpp"

namespace {

using lelc::BitString;

// Codec specs: identity | fnw:K | fnw2:K,F | map:FILE | tc1 | tc1p | tc2 |
// pfx:FILE | compound:K,MAPFILE
std::unique_ptr<lelc::Codec> make_codec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

    auto parse_count = [&](const std::string& s) -> std::uint32_t {
        try {
            std::size_t used = 0;
            unsigned long v = std::stoul(s, &used);
            if (used != s.size() || v == 0)
                throw std::invalid_argument(s);
            return static_cast<std::uint32_t>(v);
        } catch (const std::exception&) {
            throw lelc::InvalidParameter("codec spec '" + spec + "': bad count '" + s + "'");
        }
    };

    if (kind == "identity" && arg.empty())
        return std::make_unique<lelc::IdentityCodec>();
    if (kind == "fnw" && !arg.empty())
        return std::make_unique<lelc::FnwCodec>(parse_count(arg));
    if (kind == "fnw2" && !arg.empty()) {
        auto comma = arg.find(',');
        if (comma == std::string::npos)
            throw lelc::InvalidParameter("codec spec '" + spec + "': expected fnw2:K,F");
        return std::make_unique<lelc::Fnw2Codec>(parse_count(arg.substr(0, comma)),
                                                 parse_count(arg.substr(comma + 1)));
    }
    if (kind == "map" && !arg.empty())
        return std::make_unique<lelc::MapCodec>(lelc::read_map(arg));
    if (kind == "tc1" && arg.empty())
        return lelc::make_tc1_codec();
    if (kind == "tc2" && arg.empty())
        return lelc::make_tc2_codec();
    if (kind == "tc1p" && arg.empty())
        return lelc::make_tc1_chunked_codec();
    if (kind == "pfx" && !arg.empty())
        return std::make_unique<lelc::PrefixStreamCodec>(lelc::read_prefix_table(arg), "pfx");
    if (kind == "compound" && !arg.empty()) {
        auto comma = arg.find(',');
        if (comma == std::string::npos)
            throw lelc::InvalidParameter("codec spec '" + spec + "': expected compound:K,MAPFILE");
        lelc::CompoundConfig cfg{parse_count(arg.substr(0, comma)),
                                 lelc::read_map(arg.substr(comma + 1))};
        return std::make_unique<lelc::CompoundCodec>(cfg);
    }
    throw lelc::InvalidParameter("unknown codec spec '" + spec + "'");
}

lelc::LinkConfig parse_link(const std::vector<std::uint32_t>& fields) {
    lelc::LinkConfig link;
    if (!fields.empty()) {
        if (fields.size() != 4)
            throw lelc::InvalidParameter("--link expects rows,cols,flit,payload");
        link.grid_rows = fields[0];
        link.grid_cols = fields[1];
        link.flit_bits = fields[2];
        link.payload_bits = fields[3];
    }
    link.validate();
    return link;
}

int cmd_profile(const std::string& trace_path, std::uint32_t k, const std::string& out) {
    auto trace = lelc::read_trace(trace_path);
    lelc::write_histogram(out, lelc::profile(trace.payloads, k));
    return 0;
}

int cmd_synth(const std::string& hist_path, std::uint32_t payloads, std::uint32_t payload_bits,
              std::uint64_t seed, const std::string& out) {
    auto h = lelc::read_histogram(hist_path);
    auto trace = lelc::synthesize_trace(h, payloads, payload_bits, seed);
    lelc::write_trace(out, trace, payload_bits);
    return 0;
}

int cmd_mapgen(const std::string& hist_path, std::uint32_t n, bool weight_monotone,
               const std::string& out) {
    auto h = lelc::read_histogram(hist_path);
    lelc::write_map(out, lelc::mapgen(h, n, weight_monotone));
    return 0;
}

int cmd_encode(const std::string& spec, const std::string& trace_path, const std::string& out) {
    auto codec = make_codec(spec);
    auto trace = lelc::read_trace(trace_path);

    std::vector<BitString> coded;
    coded.reserve(trace.payloads.size());
    bool extended = false;
    bool uniform = true;
    for (const auto& payload : trace.payloads) {
        if (codec->padded_bits(payload.size()) != payload.size())
            extended = true;
        coded.push_back(codec->encode(payload));
        if (coded.back().size() != coded.front().size())
            uniform = false;
    }

    // A fixed-rate code on unpadded payloads yields a plain trace the
    // decoder can invert from sizes alone; everything else records
    // per-payload lengths and the original payload size.
    bool fixed_rate = codec->coded_bits_fixed(codec->group_bits()).has_value();
    if (fixed_rate && uniform && !extended) {
        std::uint32_t bits = coded.empty() ? 0 : static_cast<std::uint32_t>(coded.front().size());
        lelc::write_trace(out, coded, bits);
    } else {
        lelc::write_trace_varied(out, coded, trace.payload_bits);
    }
    return 0;
}

int cmd_decode(const std::string& spec, const std::string& trace_path, const std::string& out) {
    auto codec = make_codec(spec);
    auto trace = lelc::read_trace(trace_path);

    std::size_t payload_bits;
    if (trace.version == 2) {
        payload_bits = trace.payload_bits;
    } else {
        auto src = codec->source_bits_for(trace.payload_bits);
        if (!src)
            throw lelc::FormatError(trace_path + ": " + codec->name() +
                                    " needs the extended header to recover payload sizes");
        payload_bits = *src;
    }

    std::vector<BitString> decoded;
    decoded.reserve(trace.payloads.size());
    for (std::size_t i = 0; i < trace.payloads.size(); ++i) {
        try {
            decoded.push_back(codec->decode(trace.payloads[i], payload_bits));
        } catch (const lelc::CodecError& e) {
            throw lelc::CodecError("payload " + std::to_string(i) + ": " + e.what());
        }
    }
    lelc::write_trace(out, decoded, static_cast<std::uint32_t>(payload_bits));
    return 0;
}

int cmd_analyze(const std::string& spec, const std::string& trace_path,
                const std::vector<std::uint32_t>& link_fields, const std::string& xtalk_path) {
    auto codec = make_codec(spec);
    auto trace = lelc::read_trace(trace_path);
    auto link = parse_link(link_fields);
    lelc::CrosstalkWeightTable weights;
    if (!xtalk_path.empty())
        weights = lelc::read_crosstalk_weights(xtalk_path);

    auto energy = lelc::energy_report(trace.payloads, *codec, link);
    auto xtalk = lelc::crosstalk_report(trace.payloads, *codec, link, weights);

    std::ostream& out = std::cout;
    out << lelc::kv("codec", codec->name()) << "\n";
    out << lelc::kv("payloads", energy.payloads) << "\n";
    out << lelc::kv("dataword_bits", energy.dataword_bits) << "\n";
    out << lelc::kv("codeword_bits", energy.codeword_bits) << "\n";
    out << lelc::kv("rate", energy.rate) << "\n";
    out << lelc::kv("ones_raw", energy.ones_raw) << "\n";
    out << lelc::kv("ones_coded", energy.ones_coded) << "\n";
    if (energy.reduction_pct)
        out << lelc::kv("reduction_pct", *energy.reduction_pct) << "\n";
    else
        out << lelc::kv("reduction_pct", "na") << "\n";
    out << lelc::kv("flits_uncoded", energy.flits_uncoded) << "\n";
    out << lelc::kv("flits_coded", energy.flits_coded) << "\n";
    out << lelc::kv("xtalk_uncoded", xtalk.total_uncoded) << "\n";
    out << lelc::kv("xtalk_coded", xtalk.total_coded) << "\n";
    if (xtalk.ratio)
        out << lelc::kv("xtalk_ratio", *xtalk.ratio) << "\n";
    else
        out << lelc::kv("xtalk_ratio", "na") << "\n";
    return 0;
}

int cmd_curve(std::uint32_t samples) {
    for (const auto& point : lelc::tradeoff_curve(samples))
        std::cout << lelc::kv("ones_fraction", point.ones_fraction) << " "
                  << lelc::kv("rate", point.rate) << " "
                  << lelc::kv("energy_reduction_pct", point.energy_reduction_pct) << "\n";
    return 0;
}

int cmd_throttle(const std::string& inj_path, std::uint64_t window, std::uint64_t flits_coded,
                 std::uint64_t flits_uncoded, const std::vector<double>& thresholds) {
    auto injections = lelc::read_injections(inj_path);
    lelc::ThrottleConfig cfg;
    cfg.window_cycles = window;
    cfg.flits_coded = flits_coded;
    cfg.flits_uncoded = flits_uncoded;
    for (const auto& row : lelc::threshold_sweep(injections, cfg, thresholds))
        std::cout << lelc::kv("threshold", row.threshold) << " "
                  << lelc::kv("coded_windows", row.coded_windows) << " "
                  << lelc::kv("uncoded_windows", row.uncoded_windows) << " "
                  << lelc::kv("pct_coded", row.pct_coded) << " "
                  << lelc::kv("pct_uncoded", row.pct_uncoded) << " "
                  << lelc::kv("total_cycles", row.total_cycles) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-energy line code toolkit"};
    app.require_subcommand(1);

    std::string trace_path, out_path, hist_path, codec_spec, xtalk_path, inj_path;
    std::uint32_t k = 8, n = 9, payloads = 0, payload_bits = 512, samples = 50;
    std::uint64_t seed = 0, window = 100000, flits_coded = 5, flits_uncoded = 4;
    bool weight_monotone = false;
    std::vector<std::uint32_t> link_fields;
    std::vector<double> thresholds;

    auto* profile = app.add_subcommand("profile", "count dataword frequencies in a trace");
    profile->add_option("--trace", trace_path, "input trace file")->required();
    profile->add_option("--k", k, "dataword size in bits")->required();
    profile->add_option("--out", out_path, "output histogram file")->required();

    auto* synth = app.add_subcommand("synth", "sample a random trace from a histogram");
    synth->add_option("--hist", hist_path, "input histogram file")->required();
    synth->add_option("--payloads", payloads, "number of payloads")->required();
    synth->add_option("--payload-bits", payload_bits, "bits per payload")->required();
    synth->add_option("--seed", seed, "random seed")->required();
    synth->add_option("--out", out_path, "output trace file")->required();

    auto* mapgen = app.add_subcommand("mapgen", "derive a codebook map from a histogram");
    mapgen->add_option("--hist", hist_path, "input histogram file")->required();
    mapgen->add_option("--n", n, "codeword size in bits")->required();
    mapgen->add_flag("--weight-monotone", weight_monotone,
                     "forbid codewords heavier than their datawords");
    mapgen->add_option("--out", out_path, "output map file")->required();

    const char* codec_help = "identity | fnw:K | fnw2:K,F | map:FILE | tc1 | tc1p | tc2 | "
                             "pfx:FILE | compound:K,MAPFILE";

    auto* encode = app.add_subcommand("encode", "encode every payload of a trace");
    encode->add_option("--codec", codec_spec, codec_help)->required();
    encode->add_option("--trace", trace_path, "input trace file")->required();
    encode->add_option("--out", out_path, "output trace file")->required();

    auto* decode = app.add_subcommand("decode", "decode every payload of a coded trace");
    decode->add_option("--codec", codec_spec, codec_help)->required();
    decode->add_option("--trace", trace_path, "input coded trace file")->required();
    decode->add_option("--out", out_path, "output trace file")->required();

    auto* analyze = app.add_subcommand("analyze", "rate, energy, flit, and crosstalk report");
    analyze->add_option("--codec", codec_spec, codec_help)->required();
    analyze->add_option("--trace", trace_path, "input trace file")->required();
    analyze->add_option("--link", link_fields, "link shape rows,cols,flit,payload")
        ->delimiter(',');
    analyze->add_option("--xtalk", xtalk_path, "crosstalk weight file");

    auto* curve = app.add_subcommand("curve", "theoretical rate versus energy-reduction table");
    curve->add_option("--samples", samples, "number of curve samples")->required();

    auto* throttle = app.add_subcommand("throttle", "sweep link throttling thresholds");
    throttle->add_option("--inj", inj_path, "injection cycle file")->required();
    throttle->add_option("--window", window, "cycles per utilization window");
    throttle->add_option("--flits-coded", flits_coded, "data flits per coded packet");
    throttle->add_option("--flits-uncoded", flits_uncoded, "data flits per uncoded packet");
    throttle->add_option("--thresholds", thresholds, "utilization thresholds to sweep")
        ->required()
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (profile->parsed())
            return cmd_profile(trace_path, k, out_path);
        if (synth->parsed())
            return cmd_synth(hist_path, payloads, payload_bits, seed, out_path);
        if (mapgen->parsed())
            return cmd_mapgen(hist_path, n, weight_monotone, out_path);
        if (encode->parsed())
            return cmd_encode(codec_spec, trace_path, out_path);
        if (decode->parsed())
            return cmd_decode(codec_spec, trace_path, out_path);
        if (analyze->parsed())
            return cmd_analyze(codec_spec, trace_path, link_fields, xtalk_path);
        if (curve->parsed())
            return cmd_curve(samples);
        if (throttle->parsed())
            return cmd_throttle(inj_path, window, flits_coded, flits_uncoded, thresholds);
    } catch (const lelc::FormatError& e) {
        std::cerr << "lelc: " << e.what() << "\n";
        return 2;
    } catch (const lelc::CodecError& e) {
        std::cerr << "lelc: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "lelc: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
