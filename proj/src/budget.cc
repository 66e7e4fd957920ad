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

#include "flyq/budget.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flyq {

double coherence_length_um(Material material) {
    return material == Material::gold ? kGoldCoherenceLengthUm : kGaAsCoherenceLengthUm;
}

double coherence_factor(double path_um, double l_phi_um) {
    return std::exp(-path_um / l_phi_um);
}

BudgetReport analyze(const Circuit &circuit, double l_phi_um, double assumed_gate_length_um) {
    if (!(std::isfinite(l_phi_um) && l_phi_um > 0)) {
        throw std::invalid_argument("coherence length must be positive");
    }
    if (!(std::isfinite(assumed_gate_length_um) && assumed_gate_length_um > 0)) {
        throw std::invalid_argument("gate length must be positive");
    }
    BudgetReport report;
    report.per_rail_length_um =
        circuit.has_macros() ? expand_composites(circuit).rail_path_lengths() : circuit.rail_path_lengths();
    report.max_length_um = *std::max_element(report.per_rail_length_um.begin(), report.per_rail_length_um.end());
    report.l_phi_um = l_phi_um;
    report.coherence_factor = coherence_factor(report.max_length_um, l_phi_um);
    report.assumed_gate_length_um = assumed_gate_length_um;
    // The relative nudge keeps exact ratios like 0.3 / 0.1 from flooring to 2.
    report.feasible_gate_count =
        static_cast<std::int64_t>(std::floor(l_phi_um / assumed_gate_length_um * (1 + 1e-12)));
    return report;
}

}  // namespace flyq
