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

#ifndef FLYQ_FOCK_STATE_H
#define FLYQ_FOCK_STATE_H

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace flyq {

using Amplitude = std::complex<double>;
using ModeMatrix = Eigen::Matrix2cd;
using RandomStream = std::mt19937_64;

inline constexpr std::size_t kMaxRails = 24;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kMeasurementNormTolerance = 1e-6;

/// Occupation pattern over rails: bit i set <=> rail i holds an electron.
struct BasisIndex {
    std::uint32_t mask = 0;

    bool occupied(std::size_t rail) const {
        return (mask >> rail) & 1u;
    }
    int electron_count() const;

    auto operator<=>(const BasisIndex &) const = default;
};

/// Two distinct rails acted on together. `first` is mode 0 of a 2x2 mode matrix.
struct RailPair {
    std::size_t first = 0;
    std::size_t second = 1;

    bool operator==(const RailPair &) const = default;
};

/// Dense amplitude vector over the 2^n occupation basis of n rails.
///
/// Basis states follow a fixed rail ordering: |mask> is the product of creation
/// operators for the occupied rails, lowest rail index leftmost, acting on the
/// vacuum. All fermionic sign conventions in the engine and in the dense oracle
/// derive from that ordering.
class OccupationState {
   public:
    enum class Normalization { checked, unchecked };

    static OccupationState vacuum(std::size_t n_rails);
    static OccupationState prepare_occupation(std::size_t n_rails, std::span<const std::size_t> occupied);
    static OccupationState prepare_occupation(std::size_t n_rails, std::initializer_list<std::size_t> occupied) {
        return prepare_occupation(n_rails, std::span<const std::size_t>(occupied.begin(), occupied.size()));
    }
    /// Takes ownership of a raw amplitude vector. `checked` rejects vectors whose
    /// norm deviates from 1 by more than kNormTolerance.
    static OccupationState from_amplitudes(
        std::size_t n_rails, std::vector<Amplitude> amplitudes, Normalization normalization = Normalization::checked);

    std::size_t n_rails() const {
        return n_rails_;
    }
    std::size_t dimension() const {
        return amplitudes_.size();
    }
    std::span<const Amplitude> amplitudes() const {
        return amplitudes_;
    }
    std::span<Amplitude> mutable_amplitudes() {
        return amplitudes_;
    }
    Amplitude amplitude(BasisIndex index) const;
    double probability(BasisIndex index) const;
    double norm_squared() const;
    std::vector<double> probabilities() const;

    bool operator==(const OccupationState &) const = default;

   private:
    OccupationState(std::size_t n_rails, std::vector<Amplitude> amplitudes);

    std::size_t n_rails_;
    std::vector<Amplitude> amplitudes_;
};

/// Second-quantized action of a 2x2 mode unitary on a rail pair:
/// U a+_j U^dagger = sum_i u(i, j) a+_i for j in {first, second}.
/// Single-electron amplitudes mix through u with a Jordan-Wigner sign for every
/// occupied rail strictly between the pair; doubly occupied pairs pick up det(u).
OccupationState apply_mode_unitary(OccupationState state, RailPair rails, const ModeMatrix &u);

/// Multiplies the amplitude at each mask by exp(i * phase_of_mask(mask)).
OccupationState apply_diagonal_phase(OccupationState state, const std::function<double(BasisIndex)> &phase_of_mask);

/// Fast path for a phase on every component where `rail` is occupied.
OccupationState apply_rail_phase(OccupationState state, std::size_t rail, double phi);

struct Measurement {
    BasisIndex outcome;
    OccupationState collapsed;
};

/// Projective readout of every rail. Throws InvalidStateError when the state's
/// norm is off by more than kMeasurementNormTolerance.
Measurement measure_all(const OccupationState &state, RandomStream &rng);

/// Samples one mask from a probability table (as returned by probabilities()).
BasisIndex sample_mask(std::span<const double> probabilities, RandomStream &rng);

/// |<a|b>|^2.
double fidelity(const OccupationState &a, const OccupationState &b);

bool is_unitary(const ModeMatrix &u, double tolerance = kUnitaryTolerance);

}  // namespace flyq

#endif
