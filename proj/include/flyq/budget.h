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

#ifndef FLYQ_BUDGET_H
#define FLYQ_BUDGET_H

#include <cstdint>
#include <vector>

#include "flyq/circuit.h"

namespace flyq {

/// Phase coherence length of a GaAs/AlGaAs heterostructure (lower end of 30-40 um).
inline constexpr double kGaAsCoherenceLengthUm = 30.0;
/// Phase coherence length quoted for gold.
inline constexpr double kGoldCoherenceLengthUm = 18.0;
/// Upper bound on a single gate's physical length.
inline constexpr double kDefaultGateLengthUm = 1.0;

enum class Material { gaas, gold };

double coherence_length_um(Material material);

struct BudgetReport {
    std::vector<double> per_rail_length_um;
    double max_length_um = 0;
    double l_phi_um = kGaAsCoherenceLengthUm;
    /// exp(-max_length_um / l_phi_um)
    double coherence_factor = 1;
    /// floor(l_phi_um / assumed_gate_length_um)
    std::int64_t feasible_gate_count = 0;
    double assumed_gate_length_um = kDefaultGateLengthUm;
};

/// exp(-path / l_phi). Shared by the budget and the shot runner so both report
/// bit-identical factors.
double coherence_factor(double path_um, double l_phi_um);

/// Path length per rail counts every declared segment plus the physical length
/// of every element on the rail; the worst rail sets the coherence factor.
/// Macros are expanded first.
BudgetReport analyze(const Circuit &circuit, double l_phi_um, double assumed_gate_length_um = kDefaultGateLengthUm);

}  // namespace flyq

#endif
