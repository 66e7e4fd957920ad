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

#include "flyq/timing.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "flyq/netlist.h"

namespace flyq {

namespace {

void validate(const PropagationModel &model) {
    if (!(std::isfinite(model.velocity_um_per_ps) && model.velocity_um_per_ps > 0)) {
        throw std::invalid_argument("electron velocity must be positive");
    }
    if (!(std::isfinite(model.coincidence_window_ps) && model.coincidence_window_ps > 0)) {
        throw std::invalid_argument("coincidence window must be positive");
    }
}

void validate(const DephasingModel &model) {
    if (!(std::isfinite(model.l_phi_um) && model.l_phi_um > 0)) {
        throw std::invalid_argument("coherence length must be positive");
    }
}

std::string violation_message(const std::vector<CoincidenceViolation> &violations) {
    std::string out = "circuit is not synchronized:";
    for (const auto &v : violations) {
        out += "\n  " + describe(v);
    }
    return out;
}

const Circuit &expanded_or(const Circuit &circuit, std::optional<Circuit> &storage) {
    if (!circuit.has_macros()) {
        return circuit;
    }
    storage = expand_composites(circuit);
    return *storage;
}

}  // namespace

ArrivalTable arrival_times(const Circuit &circuit, const PropagationModel &model, std::span<const SepSource> sources) {
    validate(model);
    std::vector<std::optional<double>> delay(circuit.n_rails());
    for (const auto &s : sources) {
        if (s.rail >= circuit.n_rails()) {
            throw ConfigurationError("source on rail q" + std::to_string(s.rail) + " which does not exist");
        }
        delay[s.rail] = s.emission_delay_ps;
    }

    const auto &segments = circuit.segments();
    std::vector<double> position(circuit.n_rails(), 0.0);
    std::vector<std::size_t> slot(circuit.n_rails(), 0);
    ArrivalTable table;
    const auto &instructions = circuit.instructions();
    for (std::size_t k = 0; k < instructions.size(); ++k) {
        const auto &instruction = instructions[k];
        const auto *element = std::get_if<GateElement>(&instruction);
        const double length = element ? physical_length(*element) : 0.0;
        ElementArrival row{k, describe(instruction), instruction_rails(instruction), {}};
        for (auto rail : row.rails) {
            if (!delay[rail]) {
                throw ConfigurationError(fmt::format("rail q{} feeds '{}' but has no sep source", rail, row.label));
            }
            position[rail] += segments[rail][slot[rail]++];
            row.arrival_ps.push_back(*delay[rail] + position[rail] / model.velocity_um_per_ps);
            position[rail] += length;
        }
        table.push_back(std::move(row));
    }
    return table;
}

ArrivalTable arrival_times(const Circuit &circuit, const PropagationModel &model) {
    return arrival_times(circuit, model, circuit.sources());
}

std::vector<CoincidenceViolation> check_coincidence(const ArrivalTable &table, double window_ps) {
    std::vector<CoincidenceViolation> out;
    for (const auto &row : table) {
        if (row.rails.size() < 2) {
            continue;
        }
        const auto [lo, hi] = std::minmax_element(row.arrival_ps.begin(), row.arrival_ps.end());
        const double delta = *hi - *lo;
        if (delta > window_ps) {
            out.push_back(CoincidenceViolation{
                row.instruction_index,
                row.label,
                RailPair{
                    row.rails[static_cast<std::size_t>(lo - row.arrival_ps.begin())],
                    row.rails[static_cast<std::size_t>(hi - row.arrival_ps.begin())]},
                delta});
        }
    }
    return out;
}

std::string describe(const CoincidenceViolation &violation) {
    return fmt::format(
        "element {} ({}): q{} and q{} arrive {} ps apart", violation.instruction_index, violation.label,
        violation.rails.first, violation.rails.second, violation.delta_ps);
}

ScheduleError::ScheduleError(std::vector<CoincidenceViolation> violations)
    : ConfigurationError(violation_message(violations)), violations_(std::move(violations)) {
}

RandomStream shot_stream(std::uint64_t master_seed, std::uint64_t shot_index) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(shot_index), static_cast<std::uint32_t>(shot_index >> 32)};
    return RandomStream(seq);
}

OccupationState initial_state(const Circuit &circuit) {
    std::vector<std::size_t> occupied;
    for (const auto &s : circuit.sources()) {
        if (s.emits) {
            occupied.push_back(s.rail);
        }
    }
    return OccupationState::prepare_occupation(circuit.n_rails(), occupied);
}

OccupationState evolve_ideal(const Circuit &circuit) {
    std::optional<Circuit> storage;
    const Circuit &expanded = expanded_or(circuit, storage);
    OccupationState state = initial_state(expanded);
    for (const auto &element : expanded.elements()) {
        state = apply_element(std::move(state), element);
    }
    return state;
}

std::uint32_t detector_mask(const Circuit &circuit) {
    if (circuit.detectors().empty()) {
        return static_cast<std::uint32_t>((std::uint64_t{1} << circuit.n_rails()) - 1);
    }
    std::uint32_t mask = 0;
    for (auto d : circuit.detectors()) {
        mask |= std::uint32_t{1} << d;
    }
    return mask;
}

ShotResult run_single_shot(const Circuit &expanded, const DephasingModel &dephasing, RandomStream &rng) {
    validate(dephasing);
    const double factor =
        dephasing.mode == DephasingMode::off
            ? 1.0
            : coherence_factor(analyze(expanded, dephasing.l_phi_um).max_length_um, dephasing.l_phi_um);

    OccupationState state = initial_state(expanded);
    if (dephasing.mode == DephasingMode::monte_carlo) {
        const auto &segments = expanded.segments();
        std::vector<std::size_t> slot(expanded.n_rails(), 0);
        std::normal_distribution<double> gaussian(0.0, 1.0);
        for (const auto &element : expanded.elements()) {
            const double length = physical_length(element);
            for (auto rail : element_rails(element)) {
                const double stretch = segments[rail][slot[rail]++] + length;
                if (stretch > 0) {
                    const double sigma = std::sqrt(stretch / dephasing.l_phi_um);
                    state = apply_rail_phase(std::move(state), rail, sigma * gaussian(rng));
                }
            }
            state = apply_element(std::move(state), element);
        }
    } else {
        for (const auto &element : expanded.elements()) {
            state = apply_element(std::move(state), element);
        }
    }

    const Measurement m = measure_all(state, rng);
    ShotResult result;
    result.mask = BasisIndex{m.outcome.mask & detector_mask(expanded)};
    if (!expanded.registers().empty()) {
        result.logical = decode(result.mask, expanded.dual_rail_register());
    }
    result.coherence_factor = factor;
    return result;
}

ShotHistogram run_shots(
    const Circuit &circuit, std::uint64_t n_shots, const DephasingModel &dephasing, std::uint64_t master_seed,
    const ShotOptions &options) {
    if (n_shots == 0) {
        throw std::invalid_argument("need at least one shot");
    }
    validate(dephasing);
    std::optional<Circuit> storage;
    const Circuit &expanded = expanded_or(circuit, storage);

    ShotHistogram histogram;
    histogram.shots = n_shots;
    histogram.violations =
        check_coincidence(arrival_times(expanded, options.propagation), options.propagation.coincidence_window_ps);
    if (!histogram.violations.empty() && !options.allow_desync) {
        throw ScheduleError(histogram.violations);
    }
    histogram.mean_coherence_factor =
        dephasing.mode == DephasingMode::off
            ? 1.0
            : coherence_factor(analyze(expanded, dephasing.l_phi_um).max_length_um, dephasing.l_phi_um);

    const std::uint32_t readout = detector_mask(expanded);
    if (dephasing.mode == DephasingMode::monte_carlo) {
        for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
            auto rng = shot_stream(master_seed, shot);
            ++histogram.counts[run_single_shot(expanded, dephasing, rng).mask.mask];
        }
    } else {
        // Every trajectory is identical without noise; evolve once and sample.
        const auto probabilities = evolve_ideal(expanded).probabilities();
        for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
            auto rng = shot_stream(master_seed, shot);
            ++histogram.counts[sample_mask(probabilities, rng).mask & readout];
        }
    }
    return histogram;
}

std::map<std::vector<LogicalBit>, std::uint64_t> logical_counts(
    const ShotHistogram &histogram, const DualRailRegister &reg) {
    std::map<std::vector<LogicalBit>, std::uint64_t> out;
    for (const auto &[mask, count] : histogram.counts) {
        out[decode(BasisIndex{mask}, reg).bits] += count;
    }
    return out;
}

}  // namespace flyq
