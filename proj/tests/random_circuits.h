// Copyright 2026 The flyq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLYQ_TESTS_RANDOM_CIRCUITS_H
#define FLYQ_TESTS_RANDOM_CIRCUITS_H

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "flyq/circuit.h"
#include "flyq/fock_state.h"
#include "flyq/gates.h"

// Generators shared by the property tests and the acceptance suite.
namespace flyq::testing {

inline std::size_t pick(std::mt19937_64 &rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double uniform(std::mt19937_64 &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline RailPair random_pair(std::mt19937_64 &rng, std::size_t n_rails) {
    const std::size_t a = pick(rng, n_rails);
    std::size_t b = pick(rng, n_rails - 1);
    if (b >= a) {
        ++b;
    }
    return RailPair{a, b};
}

/// Phase shifters, couplers of arbitrary length (so non-adjacent pairs and
/// doubly occupied pairs are exercised) and Coulomb couplers.
inline GateElement random_element(std::mt19937_64 &rng, std::size_t n_rails) {
    switch (pick(rng, 3)) {
        case 0:
            return GateElement{PhaseShifter{pick(rng, n_rails), uniform(rng, -7, 7)}, std::nullopt};
        case 1:
            return GateElement{
                WaveguideCoupler{random_pair(rng, n_rails), uniform(rng, 0, 1), uniform(rng, 0.05, 0.5)},
                std::nullopt};
        default:
            return GateElement{CoulombCoupler{random_pair(rng, n_rails), uniform(rng, -4, 4)}, std::nullopt};
    }
}

inline std::vector<GateElement> random_gate_sequence(std::mt19937_64 &rng, std::size_t n_rails, std::size_t max_gates) {
    std::vector<GateElement> out(pick(rng, max_gates + 1));
    for (auto &e : out) {
        e = random_element(rng, n_rails);
    }
    return out;
}

inline OccupationState random_state(std::mt19937_64 &rng, std::size_t n_rails) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> amps(std::size_t{1} << n_rails);
    double norm = 0;
    for (auto &a : amps) {
        a = Amplitude(g(rng), g(rng));
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return OccupationState::from_amplitudes(n_rails, std::move(amps));
}

/// A structurally varied netlist-level circuit: sources, registers, wiring,
/// primitives with and without explicit lengths, macros and detectors.
inline Circuit random_netlist_circuit(std::mt19937_64 &rng) {
    const std::size_t n = 3 + pick(rng, 6);
    Circuit c(n);
    std::vector<std::size_t> rails(n);
    std::iota(rails.begin(), rails.end(), 0);
    std::shuffle(rails.begin(), rails.end(), rng);
    for (std::size_t k = 0; k < pick(rng, n + 1); ++k) {
        c.add_source(SepSource{rails[k], std::round(uniform(rng, 0, 100) * 1000) / 1000, pick(rng, 3) != 0});
    }
    std::shuffle(rails.begin(), rails.end(), rng);
    const std::size_t pairs = pick(rng, n / 2 + 1);
    for (std::size_t k = 0; k < pairs; ++k) {
        c.add_register(RegisterDecl{"r" + std::to_string(k), RailPair{rails[2 * k], rails[2 * k + 1]}});
    }
    const std::size_t steps = pick(rng, 25);
    for (std::size_t k = 0; k < steps; ++k) {
        const std::size_t kind = pick(rng, 8);
        if (kind < 2) {
            c.add_segment(pick(rng, n), uniform(rng, 0, 40));
        } else if (kind == 2) {
            MacroCall m{pick(rng, 2) ? MacroKind::fredkin : MacroKind::hadamard, {}};
            std::vector<std::size_t> r(n);
            std::iota(r.begin(), r.end(), 0);
            std::shuffle(r.begin(), r.end(), rng);
            r.resize(m.kind == MacroKind::fredkin ? 3 : 2);
            m.rails = r;
            c.add_macro(m);
        } else {
            GateElement e = random_element(rng, n);
            if (pick(rng, 3) == 0) {
                e.length_um = uniform(rng, 0, 2);
            }
            c.add_element(e);
        }
    }
    // Registers need detectors on their rails whenever any detector exists.
    if (pick(rng, 2) == 0) {
        for (const auto &r : c.registers()) {
            c.add_detector(r.pair.second);
            c.add_detector(r.pair.first);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (!c.is_detected(r) && pick(rng, 2) == 0) {
                c.add_detector(r);
            }
        }
    }
    return c;
}

}  // namespace flyq::testing

#endif
