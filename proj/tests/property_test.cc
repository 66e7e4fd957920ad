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

#include <bit>
#include <cmath>

#include "gtest/gtest.h"

#include "flyq/netlist.h"
#include "flyq/timing.h"
#include "random_circuits.h"

using namespace flyq;
using namespace flyq::testing;

namespace {

std::vector<double> sector_weights(const OccupationState &s) {
    std::vector<double> w(s.n_rails() + 1, 0.0);
    for (std::uint32_t m = 0; m < s.dimension(); ++m) {
        w[std::popcount(m)] += std::norm(s.amplitudes()[m]);
    }
    return w;
}

}  // namespace

TEST(properties, engine_matches_dense_oracle) {
    std::mt19937_64 rng(20260101);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + pick(rng, 5);
        auto state = random_state(rng, n);
        Eigen::VectorXcd dense = Eigen::Map<const Eigen::VectorXcd>(state.amplitudes().data(), state.dimension());
        const auto before = sector_weights(state);
        for (const auto &e : random_gate_sequence(rng, n, 20)) {
            state = apply_element(std::move(state), e);
            dense = build_dense_unitary(e, n) * dense;
        }
        EXPECT_NEAR(state.norm_squared(), 1.0, 1e-10);
        const auto after = sector_weights(state);
        for (std::size_t k = 0; k <= n; ++k) {
            EXPECT_NEAR(after[k], before[k], 1e-10);
        }
        for (std::size_t i = 0; i < state.dimension(); ++i) {
            ASSERT_LT(std::abs(state.amplitudes()[i] - dense(static_cast<Eigen::Index>(i))), 1e-10)
                << "trial " << trial;
        }
    }
}

TEST(properties, arbitrary_mode_unitary_matches_dense_oracle) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + pick(rng, 5);
        // Random U(2): phases times a rotation.
        const double a = uniform(rng, -3, 3), b = uniform(rng, -3, 3), c = uniform(rng, -3, 3), t = uniform(rng, 0, 3);
        ModeMatrix u;
        u << std::polar(std::cos(t), a), std::polar(std::sin(t), b), std::polar(-std::sin(t), c - b + a),
            std::polar(std::cos(t), c);
        ASSERT_TRUE(is_unitary(u));
        const RailPair pair = random_pair(rng, n);
        const auto state = random_state(rng, n);
        const auto out = apply_mode_unitary(state, pair, u);
        const Eigen::VectorXcd expected = build_dense_mode_unitary(pair, u, n) *
                                          Eigen::Map<const Eigen::VectorXcd>(state.amplitudes().data(), state.dimension());
        for (std::size_t i = 0; i < state.dimension(); ++i) {
            ASSERT_LT(std::abs(out.amplitudes()[i] - expected(static_cast<Eigen::Index>(i))), 1e-10);
        }
    }
}

TEST(properties, basis_inputs_stay_in_their_particle_sector) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + pick(rng, 5);
        const std::uint32_t mask = static_cast<std::uint32_t>(pick(rng, std::size_t{1} << n));
        auto amps = std::vector<Amplitude>(std::size_t{1} << n);
        amps[mask] = 1;
        auto state = OccupationState::from_amplitudes(n, amps);
        for (const auto &e : random_gate_sequence(rng, n, 20)) {
            state = apply_element(std::move(state), e);
        }
        for (std::uint32_t m = 0; m < state.dimension(); ++m) {
            if (std::popcount(m) != std::popcount(mask)) {
                ASSERT_EQ(state.amplitudes()[m], Amplitude(0));
            }
        }
    }
}

TEST(properties, jordan_wigner_consistency_under_fermionic_swaps) {
    // Coupler on (i, j) == S^dagger coupler(i, i+1) S, where S walks rail j down
    // to i+1 with adjacent fermionic swaps.
    ModeMatrix fswap;
    fswap << 0, 1, 1, 0;
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + pick(rng, 4);
        const std::size_t i = pick(rng, n - 2);
        const std::size_t j = i + 2 + pick(rng, n - i - 2);
        const ModeMatrix u = coupler_matrix(uniform(rng, 0, 1), 0.28);
        const auto state = random_state(rng, n);

        const auto direct = apply_mode_unitary(state, RailPair{i, j}, u);
        auto walked = state;
        for (std::size_t k = j; k > i + 1; --k) {
            walked = apply_mode_unitary(std::move(walked), RailPair{k - 1, k}, fswap);
        }
        walked = apply_mode_unitary(std::move(walked), RailPair{i, i + 1}, u);
        for (std::size_t k = i + 2; k <= j; ++k) {
            walked = apply_mode_unitary(std::move(walked), RailPair{k - 1, k}, fswap);
        }
        for (std::size_t m = 0; m < state.dimension(); ++m) {
            ASSERT_LT(std::abs(direct.amplitudes()[m] - walked.amplitudes()[m]), 1e-10);
        }
    }
}

TEST(properties, netlist_round_trip) {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 300; ++trial) {
        const Circuit c = random_netlist_circuit(rng);
        const auto text = serialize_netlist(c);
        const auto parsed = parse_netlist(text);
        ASSERT_TRUE(parsed.ok()) << text << "\n" << format_diagnostic(parsed.diagnostics.at(0));
        ASSERT_EQ(*parsed.circuit, c) << text;
    }
}

TEST(properties, parser_is_total_on_garbage) {
    std::mt19937_64 rng(9);
    const std::vector<std::string> vocabulary = {
        "rails", "3", "q0", "q1", "q2", "q99", "bs", "cc", "ps", "sep", "set", "segment", "fredkin", "hadamard",
        "dualrail", "lc=0.14um", "lt=0.28um", "chit=1rad", "phi=", "=", "delay=5ps", "empty", "1e400um", "-0um",
        "#", "\n", "\n", "\t", "len=1um", "nanrad", "q18446744073709551616", "rails 2\n", "\xff\xfe", std::string(1, '\0')};
    for (int trial = 0; trial < 2000; ++trial) {
        std::string text;
        if (trial % 2 == 0) {
            const std::size_t len = pick(rng, 200);
            for (std::size_t k = 0; k < len; ++k) {
                text += static_cast<char>(pick(rng, 256));
            }
        } else {
            const std::size_t len = pick(rng, 40);
            for (std::size_t k = 0; k < len; ++k) {
                text += vocabulary[pick(rng, vocabulary.size())];
                text += pick(rng, 4) ? " " : "\n";
            }
        }
        ParseResult r;
        ASSERT_NO_THROW(r = parse_netlist(text));
        int lines = 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
        for (const auto &d : r.diagnostics) {
            EXPECT_GE(d.line, 1);
            EXPECT_LE(d.line, lines);
            EXPECT_GE(d.column, 1);
        }
        EXPECT_EQ(r.ok(), std::none_of(r.diagnostics.begin(), r.diagnostics.end(), [](const ParseDiagnostic &d) {
                      return d.severity == Severity::error;
                  }));
    }
}

TEST(properties, expansion_preserves_path_lengths_and_order) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const Circuit c = random_netlist_circuit(rng);
        const Circuit e = expand_composites(c);
        EXPECT_FALSE(e.has_macros());
        EXPECT_EQ(expand_composites(e), e);
        std::size_t macros = 0;
        for (const auto &i : c.instructions()) {
            macros += std::holds_alternative<MacroCall>(i);
        }
        EXPECT_GE(e.instructions().size(), c.instructions().size() - macros);
    }
}
