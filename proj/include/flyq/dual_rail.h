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

#ifndef FLYQ_DUAL_RAIL_H
#define FLYQ_DUAL_RAIL_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flyq/fock_state.h"
#include "flyq/gates.h"

namespace flyq {

/// Logical qubits stored as one electron shared by two rails:
/// logical 0 = electron on `first` (|10>), logical 1 = electron on `second` (|01>).
struct DualRailRegister {
    std::vector<RailPair> pairs;

    bool operator==(const DualRailRegister &) const = default;
};

enum class LogicalBit : std::uint8_t { zero, one, leak };

struct LogicalOutcome {
    std::vector<LogicalBit> bits;

    bool operator==(const LogicalOutcome &) const = default;
};

/// "0", "1" or "LEAK".
std::string to_string(LogicalBit bit);

/// Throws std::invalid_argument on repeated rails or rails >= n_rails.
void validate_register(const DualRailRegister &reg, std::size_t n_rails);

OccupationState encode(const DualRailRegister &reg, std::span<const int> bits, std::size_t n_rails);

/// Per pair: (1,0) -> 0, (0,1) -> 1, anything else -> LEAK.
LogicalOutcome decode(BasisIndex mask, const DualRailRegister &reg);

/// Phase shifter, 50/50 coupler, phase shifter. On the single-electron
/// subspace of the pair the composite equals [[1, 1], [1, -1]] / sqrt(2)
/// exactly, with no leftover global phase.
std::vector<GateElement> logical_hadamard(RailPair pair);

/// Controlled swap of the two target rails, driven by the occupation of
/// `control_rail`.
///
/// Topology: a Mach-Zehnder interferometer (two 50/50 couplers on the target
/// pair) with a Coulomb coupler at chi*t = pi/2 between the control rail and
/// the interferometer's `target.first` arm. An internal pi phase on that arm
/// makes the bare interferometer the bar state; the control electron's -1
/// toggles it to the cross state. Outer phase shifters remove the relative
/// phases so that, on the single-electron target sector,
///   control empty    -> -i * identity
///   control occupied -> +-i * swap   (sign set by Jordan-Wigner ordering)
std::vector<GateElement> fredkin_circuit(std::size_t control_rail, RailPair target);

}  // namespace flyq

#endif
