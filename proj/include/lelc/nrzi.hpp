#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lelc/bitstring.hpp"
#include "lelc/errors.hpp"

namespace lelc {

// Transition-based signaling: a 1 bit toggles the wire voltage, a 0 leaves it
// alone. Energy tracks the number of transitions, i.e. the number of 1s sent.

enum class Transition : std::uint8_t { idle = 0, rise = 1, fall = 2 };

// Per-wire voltage history across a sequence of parallel bit times.
// states holds steps+1 rows of wire_count levels (row 0 is the initial state);
// transitions holds one row per step.
struct WireStateTimeline {
    std::size_t wire_count = 0;
    std::size_t steps = 0;
    std::vector<std::uint8_t> states;
    std::vector<Transition> transitions;

    std::uint8_t state(std::size_t step, std::size_t wire) const {
        return states[step * wire_count + wire];
    }
    Transition transition(std::size_t step, std::size_t wire) const {
        return transitions[step * wire_count + wire];
    }

    std::size_t transition_count() const {
        std::size_t n = 0;
        for (Transition t : transitions)
            n += (t != Transition::idle);
        return n;
    }
};

// Evolves wire states over a flit sequence. Each flit carries exactly one bit
// per wire; all wires start at initial_state (low by default) and the state
// persists from step to step.
inline WireStateTimeline nrzi_evolve(const std::vector<BitString>& flits,
                                     std::size_t wire_count,
                                     bool initial_state = false) {
    if (wire_count == 0)
        throw InvalidParameter("wire count must be positive");
    for (std::size_t i = 0; i < flits.size(); ++i)
        if (flits[i].size() != wire_count)
            throw InvalidParameter("flit " + std::to_string(i) + " has " +
                                   std::to_string(flits[i].size()) + " bits, expected " +
                                   std::to_string(wire_count));

    WireStateTimeline tl;
    tl.wire_count = wire_count;
    tl.steps = flits.size();
    tl.states.assign((tl.steps + 1) * wire_count, initial_state ? 1 : 0);
    tl.transitions.assign(tl.steps * wire_count, Transition::idle);

    for (std::size_t t = 0; t < tl.steps; ++t) {
        for (std::size_t w = 0; w < wire_count; ++w) {
            std::uint8_t prev = tl.states[t * wire_count + w];
            if (flits[t][w]) {
                tl.states[(t + 1) * wire_count + w] = prev ^ 1u;
                tl.transitions[t * wire_count + w] = prev ? Transition::fall : Transition::rise;
            } else {
                tl.states[(t + 1) * wire_count + w] = prev;
            }
        }
    }
    return tl;
}

} // namespace lelc
