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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "flyq/budget.h"
#include "flyq/dual_rail.h"
#include "flyq/netlist.h"
#include "flyq/run.h"
#include "flyq/timing.h"
#include "random_circuits.h"

using namespace flyq;
using flyq::testing::pick;

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok && pass) {
            detail = what;
        }
        pass = pass && ok;
    }
};

// ---------------------------------------------------------------------------
// Independent dense oracle. Sparse occupation vectors and creation operators
// with explicit anticommutation sign counting; shares no code with the engine
// (index arithmetic) or with build_dense_unitary (Kronecker products).
// ---------------------------------------------------------------------------
using Sparse = std::map<std::uint32_t, cd>;
using Dense = std::vector<std::vector<cd>>;  // [row][col]

Sparse create(const Sparse &v, std::size_t rail, cd coefficient) {
    Sparse out;
    for (const auto &[mask, amp] : v) {
        if ((mask >> rail) & 1u) {
            continue;
        }
        // Moving a+_rail past every occupied lower rail.
        int passes = 0;
        for (std::size_t r = 0; r < rail; ++r) {
            passes += (mask >> r) & 1u;
        }
        out[mask | (1u << rail)] += coefficient * amp * (passes % 2 ? -1.0 : 1.0);
    }
    return out;
}

Sparse add(Sparse a, const Sparse &b) {
    for (const auto &[m, x] : b) {
        a[m] += x;
    }
    return a;
}

Dense identity(std::size_t dim) {
    Dense d(dim, std::vector<cd>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        d[i][i] = 1;
    }
    return d;
}

Dense multiply(const Dense &a, const Dense &b) {
    const std::size_t n = a.size();
    Dense out(n, std::vector<cd>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == cd(0)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

Dense oracle_matrix(const GateElement &element, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Dense u(dim, std::vector<cd>(dim));
    if (const auto *ps = std::get_if<PhaseShifter>(&element.gate)) {
        for (std::uint32_t m = 0; m < dim; ++m) {
            u[m][m] = ((m >> ps->rail) & 1u) ? std::exp(cd(0, ps->phi)) : cd(1);
        }
        return u;
    }
    if (const auto *cc = std::get_if<CoulombCoupler>(&element.gate)) {
        for (std::uint32_t m = 0; m < dim; ++m) {
            const bool both = ((m >> cc->rails.first) & 1u) && ((m >> cc->rails.second) & 1u);
            u[m][m] = both ? std::exp(cd(0, -2 * cc->chi_t)) : cd(1);
        }
        return u;
    }
    const auto &bs = std::get<WaveguideCoupler>(element.gate);
    const double theta = kPi / 2 * bs.coupling_length_um / bs.transfer_length_um;
    const cd t = std::cos(theta);
    const cd r = cd(0, std::sin(theta));
    const std::size_t p = bs.rails.first;
    const std::size_t q = bs.rails.second;
    for (std::uint32_t m = 0; m < dim; ++m) {
        Sparse v{{0u, cd(1)}};
        for (std::size_t j = n; j-- > 0;) {
            if (!((m >> j) & 1u)) {
                continue;
            }
            if (j == p) {
                v = add(create(v, p, t), create(v, q, r));
            } else if (j == q) {
                v = add(create(v, p, r), create(v, q, t));
            } else {
                v = create(v, j, 1);
            }
        }
        for (const auto &[row, amp] : v) {
            u[row][m] = amp;
        }
    }
    return u;
}

std::string data_path(const std::string &name) {
    return std::string(FLYQ_TEST_DATA) + "/" + name;
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

OccupationState apply_all(OccupationState s, const std::vector<GateElement> &elements) {
    for (const auto &e : elements) {
        s = apply_element(std::move(s), e);
    }
    return s;
}

// ---------------------------------------------------------------------------

Verdict coulomb_truth_table() {
    Verdict v;
    const GateElement cc{CoulombCoupler{RailPair{0, 1}, kPi / 2}, std::nullopt};
    const cd expected[4] = {1, 1, 1, -1};
    double worst = 0;
    for (std::uint32_t m = 0; m < 4; ++m) {
        std::vector<std::size_t> occupied;
        for (std::size_t r = 0; r < 2; ++r) {
            if ((m >> r) & 1u) {
                occupied.push_back(r);
            }
        }
        const auto out = apply_element(OccupationState::prepare_occupation(2, occupied), cc);
        for (std::uint32_t k = 0; k < 4; ++k) {
            const cd want = k == m ? expected[m] : cd(0);
            worst = std::max(worst, std::abs(out.amplitudes()[k] - want));
        }
    }
    v.require(worst <= 1e-12, "max deviation " + std::to_string(worst));
    v.detail = v.pass ? "|00>,|01>,|10> fixed, |11> -> -|11>, max deviation " + std::to_string(worst) : v.detail;
    return v;
}

Verdict beam_splitter() {
    Verdict v;
    auto split = [](double lc, double lt) {
        return apply_element(
            OccupationState::prepare_occupation(2, {0}),
            GateElement{WaveguideCoupler{RailPair{0, 1}, lc, lt}, std::nullopt});
    };
    const auto half = split(0.14, 0.28);
    const double stay = half.probability(BasisIndex{0b01});
    const double cross = half.probability(BasisIndex{0b10});
    v.require(std::abs(stay - 0.5) <= 1e-12 && std::abs(cross - 0.5) <= 1e-12, "50/50 probabilities off");
    const double transfer = split(0.28, 0.28).probability(BasisIndex{0b10});
    v.require(std::abs(transfer - 1.0) <= 1e-12, "full transfer probability " + std::to_string(transfer));
    if (v.pass) {
        std::ostringstream s;
        s.precision(15);
        s << "Lc=0.14/Lt=0.28: " << stay << "/" << cross << "; Lc=Lt: transfer " << transfer;
        v.detail = s.str();
    }
    return v;
}

Verdict fredkin_behaviour() {
    Verdict v;
    const std::size_t c = 0;
    const RailPair target{1, 2};
    const auto elements = fredkin_circuit(c, target);

    Dense oracle = identity(8);
    for (const auto &e : elements) {
        oracle = multiply(oracle_matrix(e, 3), oracle);
    }

    // The macro path must produce the same elements.
    const auto parsed = parse_netlist("rails 3\nfredkin q0 q1 q2\n");
    v.require(parsed.ok() && expand_composites(*parsed.circuit).elements() == elements, "macro expansion differs");

    double worst_fidelity = 1;
    double worst_oracle = 0;
    for (std::uint32_t m = 0; m < 8; ++m) {
        std::uint32_t swapped = m;
        const bool a = (m >> target.first) & 1u;
        const bool b = (m >> target.second) & 1u;
        if (((m >> c) & 1u) && a != b) {
            swapped ^= (1u << target.first) | (1u << target.second);
        }
        // Oracle column is a unit-modulus entry at the controlled-swap row.
        for (std::uint32_t row = 0; row < 8; ++row) {
            const double mag = std::abs(oracle[row][m]);
            v.require(std::abs(mag - (row == swapped ? 1.0 : 0.0)) <= 1e-10, "oracle is not a controlled swap");
        }
        std::vector<std::size_t> occupied;
        for (std::size_t r = 0; r < 3; ++r) {
            if ((m >> r) & 1u) {
                occupied.push_back(r);
            }
        }
        const auto out = apply_all(OccupationState::prepare_occupation(3, occupied), elements);
        for (std::uint32_t row = 0; row < 8; ++row) {
            worst_oracle = std::max(worst_oracle, std::abs(out.amplitudes()[row] - oracle[row][m]));
        }
        worst_fidelity = std::min(worst_fidelity, out.probability(BasisIndex{swapped}));
    }
    v.require(worst_fidelity >= 1 - 1e-10, "fidelity " + std::to_string(worst_fidelity));
    v.require(worst_oracle <= 1e-10, "engine vs oracle deviation " + std::to_string(worst_oracle));
    if (v.pass) {
        std::ostringstream s;
        s << "8/8 inputs, min fidelity " << worst_fidelity << ", engine-oracle max deviation " << worst_oracle;
        v.detail = s.str();
    }
    return v;
}

Verdict coherence_budget() {
    Verdict v;
    const Circuit c(2);
    const auto gaas = analyze(c, kGaAsCoherenceLengthUm, 1.0).feasible_gate_count;
    const auto gold = analyze(c, coherence_length_um(Material::gold), 1.0).feasible_gate_count;
    v.require(gaas == 30, "GaAs count " + std::to_string(gaas));
    v.require(gold == 18, "gold count " + std::to_string(gold));
    if (v.pass) {
        v.detail = "L_phi 30 um -> 30 gates, 18 um -> 18 gates (1 um gates)";
    }
    return v;
}

Verdict dephasing_convergence() {
    Verdict v;
    const auto parsed = parse_netlist(read_file(data_path("mach_zehnder.net")));
    v.require(parsed.ok(), "fixture did not parse");
    if (!v.pass) {
        return v;
    }
    const Circuit &mz = *parsed.circuit;
    const double l_phi = 30.0;
    const std::uint64_t shots = 100000;
    const auto start = std::chrono::steady_clock::now();
    const auto h = run_shots(mz, shots, DephasingModel{l_phi, DephasingMode::monte_carlo}, 2026);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto count = [&](std::uint32_t m) { return h.counts.count(m) ? h.counts.at(m) : 0; };
    const double visibility =
        (static_cast<double>(count(0b10)) - static_cast<double>(count(0b01))) / static_cast<double>(shots);
    const double expected = std::exp(-1.0);
    v.require(std::abs(visibility - expected) <= 0.02, "visibility " + std::to_string(visibility));
    v.require(seconds < 10, "took " + std::to_string(seconds) + " s");
    if (v.pass) {
        std::ostringstream s;
        s << "arms 30 um = L_phi, visibility " << visibility << " vs exp(-1) = " << expected << " ("
          << shots << " shots, " << seconds << " s)";
        v.detail = s.str();
    }
    return v;
}

Verdict property_suites() {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(6);

    // (a)-(c) one corpus of 1000 random circuits.
    double worst_norm = 0;
    double worst_sector = 0;
    double worst_oracle = 0;
    int non_adjacent = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + pick(rng, 5);
        auto state = flyq::testing::random_state(rng, n);
        Eigen::VectorXcd dense = Eigen::Map<const Eigen::VectorXcd>(state.amplitudes().data(), state.dimension());
        std::vector<double> sectors_in(n + 1, 0.0);
        for (std::uint32_t m = 0; m < state.dimension(); ++m) {
            sectors_in[std::popcount(m)] += std::norm(state.amplitudes()[m]);
        }
        for (const auto &e : flyq::testing::random_gate_sequence(rng, n, 20)) {
            if (const auto *bs = std::get_if<WaveguideCoupler>(&e.gate)) {
                const auto gap = bs->rails.first > bs->rails.second ? bs->rails.first - bs->rails.second
                                                                    : bs->rails.second - bs->rails.first;
                non_adjacent += gap > 1;
            }
            state = apply_element(std::move(state), e);
            dense = build_dense_unitary(e, n) * dense;
        }
        worst_norm = std::max(worst_norm, std::abs(state.norm_squared() - 1));
        std::vector<double> sectors_out(n + 1, 0.0);
        for (std::uint32_t m = 0; m < state.dimension(); ++m) {
            sectors_out[std::popcount(m)] += std::norm(state.amplitudes()[m]);
            worst_oracle = std::max(worst_oracle, std::abs(state.amplitudes()[m] - dense(m)));
        }
        for (std::size_t k = 0; k <= n; ++k) {
            worst_sector = std::max(worst_sector, std::abs(sectors_out[k] - sectors_in[k]));
        }
    }
    v.require(worst_norm <= 1e-10, "(a) norm drift " + std::to_string(worst_norm));
    v.require(worst_sector <= 1e-10, "(b) particle-number sector drift " + std::to_string(worst_sector));
    v.require(worst_oracle <= 1e-10, "(c) engine vs oracle " + std::to_string(worst_oracle));
    v.require(non_adjacent > 0, "(c) corpus has no non-adjacent couplers");

    // (d) netlist round trip.
    int round_trips = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Circuit c = flyq::testing::random_netlist_circuit(rng);
        const auto parsed = parse_netlist(serialize_netlist(c));
        round_trips += parsed.ok() && *parsed.circuit == c;
    }
    v.require(round_trips == 1000, "(d) round trips " + std::to_string(round_trips) + "/1000");

    // (e) seeded runs are byte-identical.
    RunConfig config;
    config.shots = 1000;
    config.seed = 42;
    config.format = OutputFormat::machine;
    bool identical = true;
    for (const char *name : {"fredkin.net", "mach_zehnder.net", "desync_fixed.net"}) {
        for (auto mode : {DephasingMode::off, DephasingMode::deterministic_factor, DephasingMode::monte_carlo}) {
            config.dephasing = mode;
            const auto text = read_file(data_path(name));
            std::ostringstream a, b, err;
            run_netlist(config, text, a, err);
            run_netlist(config, text, b, err);
            identical = identical && a.str() == b.str() && !a.str().empty();
        }
    }
    v.require(identical, "(e) machine output differs between seeded runs");

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(seconds < 60, "took " + std::to_string(seconds) + " s");
    if (v.pass) {
        std::ostringstream s;
        s << "norm " << worst_norm << ", sector " << worst_sector << ", oracle " << worst_oracle << " ("
          << non_adjacent << " non-adjacent couplers), round trips 1000/1000, reproducible; " << seconds << " s";
        v.detail = s.str();
    }
    return v;
}

Verdict synchronization_gate() {
    Verdict v;
    RunConfig config;
    config.shots = 100;
    config.window_ps = 1.0;
    config.format = OutputFormat::machine;
    config.input_path = data_path("desync.net");
    std::ostringstream out, err;
    const int rejected = run(config, out, err);
    v.require(rejected == kExitSchedule, "desynchronized netlist exit " + std::to_string(rejected));
    v.require(err.str().find("(cc q0 q1)") != std::string::npos, "violation does not name the cc element");

    config.input_path = data_path("desync_fixed.net");
    std::ostringstream out2, err2;
    const int fixed = run(config, out2, err2);
    v.require(fixed == kExitOk, "compensated netlist exit " + std::to_string(fixed));
    if (v.pass) {
        v.detail = "10 ps skew -> exit 3 naming 'cc q0 q1'; +10 ps emission delay -> exit 0";
    }
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"1 coulomb coupler truth table", coulomb_truth_table},
        {"2 beam splitter symmetry and full transfer", beam_splitter},
        {"3 fredkin controlled swap vs dense oracle", fredkin_behaviour},
        {"4 coherence budget gate count", coherence_budget},
        {"5 monte-carlo dephasing visibility", dephasing_convergence},
        {"6 property suites", property_suites},
        {"7 synchronization gate", synchronization_gate},
    };
    int failures = 0;
    for (const auto &[name, check] : criteria) {
        Verdict verdict;
        try {
            verdict = check();
        } catch (const std::exception &e) {
            verdict = Verdict{false, std::string("exception: ") + e.what()};
        }
        std::cout << (verdict.pass ? "PASS " : "FAIL ") << name << ": " << verdict.detail << std::endl;
        failures += !verdict.pass;
    }
    return failures == 0 ? 0 : 1;
}
