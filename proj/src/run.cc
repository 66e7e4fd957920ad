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

#include "flyq/run.h"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "flyq/netlist.h"

namespace flyq {

namespace {

std::string occupation_string(std::uint32_t mask, std::size_t n_rails, std::uint32_t readout) {
    std::string out;
    for (std::size_t r = 0; r < n_rails; ++r) {
        if (!((readout >> r) & 1u)) {
            out += '-';
        } else {
            out += ((mask >> r) & 1u) ? '1' : '0';
        }
    }
    return out;
}

struct RegisterCounts {
    std::string name;
    std::uint64_t zero = 0;
    std::uint64_t one = 0;
    std::uint64_t leak = 0;
};

std::vector<RegisterCounts> register_counts(const Circuit &circuit, const ShotHistogram &histogram) {
    std::vector<RegisterCounts> out;
    for (const auto &decl : circuit.registers()) {
        RegisterCounts counts{decl.name};
        const DualRailRegister single{{decl.pair}};
        for (const auto &[mask, n] : histogram.counts) {
            switch (decode(BasisIndex{mask}, single).bits[0]) {
                case LogicalBit::zero:
                    counts.zero += n;
                    break;
                case LogicalBit::one:
                    counts.one += n;
                    break;
                case LogicalBit::leak:
                    counts.leak += n;
                    break;
            }
        }
        out.push_back(counts);
    }
    return out;
}

void write_machine(
    std::ostream &out, const RunConfig &config, const Circuit &circuit, const ShotHistogram &histogram,
    const BudgetReport &budget) {
    const std::uint32_t readout = detector_mask(circuit);
    out << "status=ok\n";
    out << fmt::format("rails={}\n", circuit.n_rails());
    out << fmt::format("elements={}\n", circuit.instructions().size());
    out << fmt::format("shots={}\n", histogram.shots);
    out << fmt::format("seed={}\n", config.seed);
    out << fmt::format("dephasing={}\n", to_string(config.dephasing));
    out << fmt::format("lphi_um={}\n", config.l_phi_um);
    out << fmt::format("velocity_um_per_ps={}\n", config.velocity_um_per_ps);
    out << fmt::format("window_ps={}\n", config.window_ps);
    out << fmt::format("violations={}\n", histogram.violations.size());
    for (const auto &v : histogram.violations) {
        out << fmt::format("violation {} {} {}\n", v.instruction_index, v.label, v.delta_ps);
    }
    out << fmt::format("coherence_factor={}\n", histogram.mean_coherence_factor);
    out << fmt::format("budget.max_length_um={}\n", budget.max_length_um);
    out << fmt::format("budget.coherence_factor={}\n", budget.coherence_factor);
    out << fmt::format("budget.gate_length_um={}\n", budget.assumed_gate_length_um);
    out << fmt::format("budget.feasible_gate_count={}\n", budget.feasible_gate_count);
    for (std::size_t r = 0; r < circuit.n_rails(); ++r) {
        out << fmt::format("budget.rail.q{}_um={}\n", r, budget.per_rail_length_um[r]);
    }
    for (const auto &[mask, n] : histogram.counts) {
        out << fmt::format("count {} {}\n", occupation_string(mask, circuit.n_rails(), readout), n);
    }
    for (const auto &c : register_counts(circuit, histogram)) {
        out << fmt::format("logical {} 0 {}\n", c.name, c.zero);
        out << fmt::format("logical {} 1 {}\n", c.name, c.one);
        out << fmt::format("logical {} LEAK {}\n", c.name, c.leak);
    }
}

void write_human(
    std::ostream &out, const RunConfig &config, const Circuit &circuit, const ShotHistogram &histogram,
    const BudgetReport &budget) {
    const std::uint32_t readout = detector_mask(circuit);
    out << fmt::format(
        "circuit: {} rails, {} primitive elements\n", circuit.n_rails(), circuit.instructions().size());
    if (histogram.violations.empty()) {
        out << fmt::format(
            "coincidence: ok (window {} ps, velocity {} um/ps)\n", config.window_ps, config.velocity_um_per_ps);
    } else {
        out << fmt::format("coincidence: {} violation(s), overridden\n", histogram.violations.size());
        for (const auto &v : histogram.violations) {
            out << "  " << describe(v) << "\n";
        }
    }
    out << fmt::format(
        "shots: {} (seed {}, dephasing {})\n", histogram.shots, config.seed, to_string(config.dephasing));
    out << "  occupation (q0 first)  count      fraction\n";
    for (const auto &[mask, n] : histogram.counts) {
        out << fmt::format(
            "  {:<22} {:<10} {:.4f}\n", occupation_string(mask, circuit.n_rails(), readout), n,
            static_cast<double>(n) / static_cast<double>(histogram.shots));
    }
    const auto registers = register_counts(circuit, histogram);
    if (!registers.empty()) {
        out << "logical outcomes:\n";
        for (const auto &c : registers) {
            out << fmt::format("  {}: 0={} 1={} LEAK={}\n", c.name, c.zero, c.one, c.leak);
        }
    }
    out << fmt::format("coherence factor: {:.6f}\n", histogram.mean_coherence_factor);
    out << fmt::format(
        "budget (l_phi {} um, gate length {} um):\n", budget.l_phi_um, budget.assumed_gate_length_um);
    for (std::size_t r = 0; r < circuit.n_rails(); ++r) {
        out << fmt::format("  q{} path {} um\n", r, budget.per_rail_length_um[r]);
    }
    out << fmt::format(
        "  max path {} um, coherence factor {:.6f}, feasible gate count {}\n", budget.max_length_um,
        budget.coherence_factor, budget.feasible_gate_count);
}

}  // namespace

std::optional<DephasingMode> parse_dephasing_mode(std::string_view name) {
    if (name == "off") {
        return DephasingMode::off;
    }
    if (name == "factor") {
        return DephasingMode::deterministic_factor;
    }
    if (name == "mc") {
        return DephasingMode::monte_carlo;
    }
    return std::nullopt;
}

std::string_view to_string(DephasingMode mode) {
    switch (mode) {
        case DephasingMode::off:
            return "off";
        case DephasingMode::deterministic_factor:
            return "factor";
        case DephasingMode::monte_carlo:
            return "mc";
    }
    return "?";
}

std::optional<std::string> validate(const RunConfig &config) {
    auto positive = [](double x) { return std::isfinite(x) && x > 0; };
    if (config.shots < 1) {
        return "--shots must be at least 1";
    }
    if (!positive(config.l_phi_um)) {
        return "--lphi must be positive";
    }
    if (!positive(config.velocity_um_per_ps)) {
        return "--velocity must be positive";
    }
    if (!positive(config.window_ps)) {
        return "--window must be positive";
    }
    if (!positive(config.gate_length_um)) {
        return "--gate-length must be positive";
    }
    return std::nullopt;
}

int run_netlist(const RunConfig &config, std::string_view netlist, std::ostream &out, std::ostream &err) {
    if (auto problem = validate(config)) {
        err << "error: " << *problem << "\n";
        return kExitUsage;
    }
    const std::string where = config.input_path.empty() ? "<input>" : config.input_path;

    auto parsed = parse_netlist(netlist);
    for (const auto &d : parsed.diagnostics) {
        err << where << ":" << format_diagnostic(d) << "\n";
    }
    if (!parsed.ok()) {
        return kExitParse;
    }
    const Circuit circuit = expand_composites(*parsed.circuit);

    ShotOptions options;
    options.propagation.velocity_um_per_ps = config.velocity_um_per_ps;
    options.propagation.coincidence_window_ps = config.window_ps;
    options.allow_desync = config.allow_desync;
    const DephasingModel dephasing{config.l_phi_um, config.dephasing};

    ShotHistogram histogram;
    try {
        histogram = run_shots(circuit, config.shots, dephasing, config.seed, options);
    } catch (const ScheduleError &e) {
        for (const auto &v : e.violations()) {
            err << where << ": error: " << describe(v) << "\n";
        }
        err << "hint: adjust sep delays or pass --allow-desync\n";
        if (config.format == OutputFormat::machine) {
            out << "status=desync\n";
            out << fmt::format("violations={}\n", e.violations().size());
            for (const auto &v : e.violations()) {
                out << fmt::format("violation {} {} {}\n", v.instruction_index, v.label, v.delta_ps);
            }
        }
        return kExitSchedule;
    } catch (const ConfigurationError &e) {
        err << where << ": error: " << e.what() << "\n";
        return kExitSchedule;
    }

    const BudgetReport budget = analyze(circuit, config.l_phi_um, config.gate_length_um);
    if (config.format == OutputFormat::machine) {
        write_machine(out, config, circuit, histogram, budget);
    } else {
        write_human(out, config, circuit, histogram, budget);
    }
    return kExitOk;
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    std::ifstream file(config.input_path, std::ios::binary);
    if (!file) {
        err << "error: cannot read " << config.input_path << "\n";
        return kExitUsage;
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    return run_netlist(config, buffer.str(), out, err);
}

}  // namespace flyq
