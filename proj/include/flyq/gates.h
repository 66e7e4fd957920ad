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

#ifndef FLYQ_GATES_H
#define FLYQ_GATES_H

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "flyq/fock_state.h"

namespace flyq {

/// Transfer length of a representative electron waveguide coupler (um).
inline constexpr double kTransferLengthUm = 0.28;
/// Coupling length of a 50/50 coupler built from it, L_t / 2 (um).
inline constexpr double kHalfTransferLengthUm = kTransferLengthUm / 2;
/// Largest rail count for which build_dense_unitary will materialize a matrix.
inline constexpr std::size_t kMaxDenseRails = 6;

/// Quantum-dot phase shifter: the occupied component of `rail` gains e^{i phi}.
struct PhaseShifter {
    std::size_t rail = 0;
    double phi = 0;

    bool operator==(const PhaseShifter &) const = default;
};

/// Electron waveguide coupler. Interaction length `coupling_length_um` against
/// full-transfer length `transfer_length_um` sets the splitting ratio.
struct WaveguideCoupler {
    RailPair rails;
    double coupling_length_um = kHalfTransferLengthUm;
    double transfer_length_um = kTransferLengthUm;

    bool operator==(const WaveguideCoupler &) const = default;
};

/// Coulomb coupler with H = hbar chi N_A N_C applied for time t; `chi_t` is the
/// per-electron phase. The doubly occupied component gains e^{-2 i chi_t}.
struct CoulombCoupler {
    RailPair rails;
    double chi_t = 0;

    bool operator==(const CoulombCoupler &) const = default;
};

using Gate = std::variant<PhaseShifter, WaveguideCoupler, CoulombCoupler>;

struct GateElement {
    Gate gate;
    /// Physical length along the rails in um; see physical_length() for defaults.
    std::optional<double> length_um;

    bool operator==(const GateElement &) const = default;
};

/// The cited quantum-dot experiments reach phi in (0, pi). `strict_hardware`
/// enforces that range; `any` accepts every finite phase.
enum class PhasePolicy { any, strict_hardware };

/// diag(1, e^{i phi}) over the rail's {|0>, |1>} occupation basis.
Eigen::Matrix2cd phase_shifter_matrix(double phi, PhasePolicy policy = PhasePolicy::any);

/// [[cos t, i sin t], [i sin t, cos t]] with t = (pi/2) * coupling / transfer.
/// This is a mode matrix: column j is where an electron entering rail j goes.
ModeMatrix coupler_matrix(double coupling_length_um, double transfer_length_um);

/// Diagonal of the Coulomb coupler over the pair basis |00>, |01>, |10>, |11>.
Eigen::Vector4cd coulomb_phase(double chi_t);

/// Rails touched by the element, in the element's own order.
std::vector<std::size_t> element_rails(const GateElement &element);

/// Explicit length if set; otherwise the coupling length for a waveguide
/// coupler and zero for the point-like phase shifter and Coulomb coupler.
double physical_length(const GateElement &element);

/// Throws std::invalid_argument if parameters or rail indices are invalid for
/// a circuit of `n_rails` rails.
void validate_element(const GateElement &element, std::size_t n_rails, PhasePolicy policy = PhasePolicy::any);

/// Applies the element to a state with the fast engine.
OccupationState apply_element(OccupationState state, const GateElement &element);

/// Brute-force 2^n x 2^n matrix for the element, built from dense Jordan-Wigner
/// creation operators rather than the engine's index arithmetic. Throws
/// CapacityError above kMaxDenseRails.
Eigen::MatrixXcd build_dense_unitary(const GateElement &element, std::size_t n_rails);

/// Dense second-quantized matrix of an arbitrary 2x2 mode matrix on a rail pair
/// (same construction as build_dense_unitary uses for couplers).
Eigen::MatrixXcd build_dense_mode_unitary(RailPair rails, const ModeMatrix &u, std::size_t n_rails);

}  // namespace flyq

#endif
