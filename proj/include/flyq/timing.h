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

#ifndef FLYQ_TIMING_H
#define FLYQ_TIMING_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flyq/budget.h"
#include "flyq/circuit.h"
#include "flyq/errors.h"
#include "flyq/fock_state.h"

namespace flyq {

/// No electron velocity is given for the device; 0.1 um/ps is a representative
/// ballistic order of magnitude and every caller may override it.
inline constexpr double kDefaultVelocityUmPerPs = 0.1;
inline constexpr double kDefaultCoincidenceWindowPs = 1.0;

struct PropagationModel {
    double velocity_um_per_ps = kDefaultVelocityUmPerPs;
    double coincidence_window_ps = kDefaultCoincidenceWindowPs;
};

enum class DephasingMode { off, deterministic_factor, monte_carlo };

struct DephasingModel {
    double l_phi_um = kGaAsCoherenceLengthUm;
    DephasingMode mode = DephasingMode::off;
};

/// When the electrons on each rail of one instruction reach it.
struct ElementArrival {
    std::size_t instruction_index = 0;
    std::string label;
    std::vector<std::size_t> rails;
    std::vector<double> arrival_ps;
};

using ArrivalTable = std::vector<ElementArrival>;

/// arrival = emission delay + (wire and element length upstream on the rail) / velocity.
/// Throws ConfigurationError if a rail carrying an instruction has no source.
ArrivalTable arrival_times(const Circuit &circuit, const PropagationModel &model, std::span<const SepSource> sources);
ArrivalTable arrival_times(const Circuit &circuit, const PropagationModel &model);

struct CoincidenceViolation {
    std::size_t instruction_index = 0;
    std::string label;
    /// Earliest and latest rail at the element.
    RailPair rails;
    double delta_ps = 0;
};

/// Every multi-rail instruction whose arrival spread exceeds `window_ps`.
std::vector<CoincidenceViolation> check_coincidence(const ArrivalTable &table, double window_ps);

std::string describe(const CoincidenceViolation &violation);

/// Raised by run_shots when the circuit is not schedulable and no override was given.
class ScheduleError : public ConfigurationError {
   public:
    explicit ScheduleError(std::vector<CoincidenceViolation> violations);

    const std::vector<CoincidenceViolation> &violations() const {
        return violations_;
    }

   private:
    std::vector<CoincidenceViolation> violations_;
};

struct ShotOptions {
    PropagationModel propagation;
    bool allow_desync = false;
};

struct ShotResult {
    BasisIndex mask;
    std::optional<LogicalOutcome> logical;
    double coherence_factor = 1;
};

struct ShotHistogram {
    std::uint64_t shots = 0;
    /// Keyed by measured mask; undetected rails read as 0.
    std::map<std::uint32_t, std::uint64_t> counts;
    double mean_coherence_factor = 1;
    std::vector<CoincidenceViolation> violations;
};

/// Per-shot stream derived from (master_seed, shot_index) only, so shots can be
/// evaluated in any order or in parallel with identical results.
RandomStream shot_stream(std::uint64_t master_seed, std::uint64_t shot_index);

/// Sources emitting an electron are occupied; every other rail starts empty.
OccupationState initial_state(const Circuit &circuit);

/// Noise-free final state before measurement. Macros are expanded first.
OccupationState evolve_ideal(const Circuit &circuit);

/// Bits of the rails that are read out: the `set` detectors, or all rails when none are declared.
std::uint32_t detector_mask(const Circuit &circuit);

/// One trajectory. In monte-carlo mode every stretch of rail (wire plus element
/// length) of length l adds a Gaussian phase with variance l / l_phi to the
/// components where that rail is occupied; two arms of length l therefore
/// dephase relative to each other with variance 2 l / l_phi, and interference
/// visibility decays as exp(-l / l_phi).
ShotResult run_single_shot(const Circuit &expanded, const DephasingModel &dephasing, RandomStream &rng);

/// Samples `n_shots` readouts. Throws ScheduleError if coincidence fails and
/// options.allow_desync is false.
ShotHistogram run_shots(
    const Circuit &circuit, std::uint64_t n_shots, const DephasingModel &dephasing, std::uint64_t master_seed,
    const ShotOptions &options = {});

/// Per logical outcome (e.g. {0, LEAK}) count for the circuit's dual-rail registers.
std::map<std::vector<LogicalBit>, std::uint64_t> logical_counts(
    const ShotHistogram &histogram, const DualRailRegister &reg);

}  // namespace flyq

#endif
