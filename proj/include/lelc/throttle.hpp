#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lelc/errors.hpp"

namespace lelc {

// Single-link feedback throttle. The link serves packets in arrival order;
// coding is switched per time window based on how busy the previous window
// was. Coding costs extra flits per packet, so under congestion the
// controller falls back to shorter uncoded packets.
struct ThrottleConfig {
    std::uint64_t window_cycles = 100000;
    double threshold = 0.165;    // utilization above this disables coding
    std::uint64_t flits_coded = 5;
    std::uint64_t flits_uncoded = 4;
    std::uint64_t header_flits = 1;

    void validate() const {
        if (window_cycles == 0)
            throw InvalidParameter("throttle: window must be positive");
        if (!(threshold >= 0.0 && threshold <= 1.0))
            throw InvalidParameter("throttle: threshold must lie in [0, 1]");
        if (flits_uncoded == 0 || flits_coded < flits_uncoded)
            throw InvalidParameter("throttle: coded packets cannot be shorter than uncoded ones");
    }
};

struct ThrottleReport {
    std::uint64_t packets = 0;
    std::uint64_t total_cycles = 0;  // time until the link drains
    std::uint64_t busy_cycles = 0;
    std::uint64_t windows = 0;
    std::uint64_t coded_windows = 0;
    std::uint64_t uncoded_windows = 0;
    std::vector<double> window_utilization;
    std::vector<bool> window_coded;
};

// Replays sorted injection cycles through the link. A packet is sent in the
// mode of the window it was injected in (window 0 is always coded; window
// w+1 is uncoded exactly when window w's utilization exceeded the
// threshold), occupies header+data cycles starting no earlier than both its
// injection and the link becoming free, and keeps its mode even if it is
// still queued when the window turns.
inline ThrottleReport simulate(const std::vector<std::uint64_t>& injections,
                               const ThrottleConfig& cfg) {
    cfg.validate();
    for (std::size_t i = 1; i < injections.size(); ++i)
        if (injections[i] < injections[i - 1])
            throw InvalidParameter("throttle: injection cycles must be sorted, entry " +
                                   std::to_string(i) + " goes backwards");

    const std::uint64_t window = cfg.window_cycles;
    std::vector<std::uint64_t> busy;     // busy cycles per window
    std::vector<bool> coded_mode;        // decided mode per window

    auto busy_at = [&](std::uint64_t w) -> std::uint64_t {
        return w < busy.size() ? busy[w] : 0;
    };
    // Window modes depend only on fully elapsed windows, so they can be
    // decided lazily in order.
    auto mode_of = [&](std::uint64_t w) -> bool {
        while (coded_mode.size() <= w) {
            std::uint64_t prev = coded_mode.size() - 1;
            double util = static_cast<double>(busy_at(prev)) / static_cast<double>(window);
            coded_mode.push_back(util <= cfg.threshold);
        }
        return coded_mode[w];
    };

    ThrottleReport report;
    report.packets = injections.size();
    coded_mode.push_back(true); // window 0

    std::uint64_t link_free = 0;
    for (std::uint64_t cycle : injections) {
        bool coded = mode_of(cycle / window);
        std::uint64_t duration =
            cfg.header_flits + (coded ? cfg.flits_coded : cfg.flits_uncoded);
        std::uint64_t start = std::max(cycle, link_free);
        link_free = start + duration;
        report.busy_cycles += duration;

        // Spread the busy cycles over the windows the packet spans.
        std::uint64_t pos = start;
        while (pos < link_free) {
            std::uint64_t w = pos / window;
            std::uint64_t window_end = (w + 1) * window;
            std::uint64_t span = std::min(link_free, window_end) - pos;
            if (busy.size() <= w)
                busy.resize(w + 1, 0);
            busy[w] += span;
            pos += span;
        }
    }

    report.total_cycles = link_free;
    report.windows = (link_free + window - 1) / window;
    for (std::uint64_t w = 0; w < report.windows; ++w) {
        bool coded = mode_of(w);
        report.window_coded.push_back(coded);
        report.window_utilization.push_back(static_cast<double>(busy_at(w)) /
                                            static_cast<double>(window));
        ++(coded ? report.coded_windows : report.uncoded_windows);
    }
    return report;
}

struct ThrottleSweepRow {
    double threshold = 0.0;
    std::uint64_t coded_windows = 0;
    std::uint64_t uncoded_windows = 0;
    double pct_coded = 0.0;
    double pct_uncoded = 0.0;
    std::uint64_t total_cycles = 0;
};

inline std::vector<ThrottleSweepRow> threshold_sweep(const std::vector<std::uint64_t>& injections,
                                                     ThrottleConfig cfg,
                                                     const std::vector<double>& thresholds) {
    std::vector<ThrottleSweepRow> rows;
    rows.reserve(thresholds.size());
    for (double t : thresholds) {
        cfg.threshold = t;
        auto report = simulate(injections, cfg);
        ThrottleSweepRow row;
        row.threshold = t;
        row.coded_windows = report.coded_windows;
        row.uncoded_windows = report.uncoded_windows;
        if (report.windows > 0) {
            row.pct_coded = 100.0 * static_cast<double>(report.coded_windows) /
                            static_cast<double>(report.windows);
            row.pct_uncoded = 100.0 * static_cast<double>(report.uncoded_windows) /
                              static_cast<double>(report.windows);
        }
        row.total_cycles = report.total_cycles;
        rows.push_back(row);
    }
    return rows;
}

} // namespace lelc
