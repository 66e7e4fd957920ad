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

#include "flyq/fock_state.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flyq/errors.h"

namespace flyq {

namespace {

void require_rail_count(std::size_t n_rails) {
    if (n_rails == 0) {
        throw std::invalid_argument("an occupation state needs at least one rail");
    }
    if (n_rails > kMaxRails) {
        throw CapacityError(
            "requested " + std::to_string(n_rails) + " rails; the dense engine supports at most " +
            std::to_string(kMaxRails));
    }
}

void require_rail(const OccupationState &state, std::size_t rail) {
    if (rail >= state.n_rails()) {
        throw std::invalid_argument(
            "rail " + std::to_string(rail) + " out of range for " + std::to_string(state.n_rails()) + " rails");
    }
}

}  // namespace

int BasisIndex::electron_count() const {
    return std::popcount(mask);
}

OccupationState::OccupationState(std::size_t n_rails, std::vector<Amplitude> amplitudes)
    : n_rails_(n_rails), amplitudes_(std::move(amplitudes)) {
}

OccupationState OccupationState::vacuum(std::size_t n_rails) {
    require_rail_count(n_rails);
    std::vector<Amplitude> amplitudes(std::size_t{1} << n_rails);
    amplitudes[0] = 1.0;
    return OccupationState(n_rails, std::move(amplitudes));
}

OccupationState OccupationState::prepare_occupation(std::size_t n_rails, std::span<const std::size_t> occupied) {
    require_rail_count(n_rails);
    std::uint32_t mask = 0;
    for (auto rail : occupied) {
        if (rail >= n_rails) {
            throw std::invalid_argument(
                "rail " + std::to_string(rail) + " out of range for " + std::to_string(n_rails) + " rails");
        }
        mask |= std::uint32_t{1} << rail;
    }
    std::vector<Amplitude> amplitudes(std::size_t{1} << n_rails);
    amplitudes[mask] = 1.0;
    return OccupationState(n_rails, std::move(amplitudes));
}

OccupationState OccupationState::from_amplitudes(
    std::size_t n_rails, std::vector<Amplitude> amplitudes, Normalization normalization) {
    require_rail_count(n_rails);
    if (amplitudes.size() != (std::size_t{1} << n_rails)) {
        throw std::invalid_argument(
            "amplitude vector of length " + std::to_string(amplitudes.size()) + " does not match " +
            std::to_string(n_rails) + " rails");
    }
    OccupationState state(n_rails, std::move(amplitudes));
    if (normalization == Normalization::checked && std::abs(state.norm_squared() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("amplitudes are not normalized");
    }
    return state;
}

Amplitude OccupationState::amplitude(BasisIndex index) const {
    if (index.mask >= amplitudes_.size()) {
        throw std::invalid_argument("basis mask " + std::to_string(index.mask) + " out of range");
    }
    return amplitudes_[index.mask];
}

double OccupationState::probability(BasisIndex index) const {
    return std::norm(amplitude(index));
}

double OccupationState::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

std::vector<double> OccupationState::probabilities() const {
    std::vector<double> result;
    result.reserve(amplitudes_.size());
    for (const auto &a : amplitudes_) {
        result.push_back(std::norm(a));
    }
    return result;
}

bool is_unitary(const ModeMatrix &u, double tolerance) {
    if (!u.allFinite()) {
        return false;
    }
    ModeMatrix product = u.adjoint() * u;
    return (product - ModeMatrix::Identity()).cwiseAbs().maxCoeff() <= tolerance;
}

OccupationState apply_mode_unitary(OccupationState state, RailPair rails, const ModeMatrix &u) {
    require_rail(state, rails.first);
    require_rail(state, rails.second);
    if (rails.first == rails.second) {
        throw std::invalid_argument("mode unitary needs two distinct rails");
    }
    if (!is_unitary(u)) {
        throw std::invalid_argument("mode matrix is not unitary");
    }

    const std::uint32_t bit_p = std::uint32_t{1} << rails.first;
    const std::uint32_t bit_q = std::uint32_t{1} << rails.second;
    const std::size_t lo = std::min(rails.first, rails.second);
    const std::size_t hi = std::max(rails.first, rails.second);
    // Rails strictly between the pair in the fixed ordering.
    const std::uint32_t between = ((std::uint32_t{1} << hi) - 1) & ~((std::uint32_t{2} << lo) - 1);
    const Amplitude det = u.determinant();

    auto amps = state.mutable_amplitudes();
    for (std::uint32_t rest = 0; rest < amps.size(); ++rest) {
        if (rest & (bit_p | bit_q)) {
            continue;
        }
        const double sign = (std::popcount(rest & between) & 1) ? -1.0 : 1.0;
        Amplitude &on_p = amps[rest | bit_p];
        Amplitude &on_q = amps[rest | bit_q];
        const Amplitude p = on_p;
        const Amplitude q = on_q;
        on_p = u(0, 0) * p + sign * u(0, 1) * q;
        on_q = sign * u(1, 0) * p + u(1, 1) * q;
        amps[rest | bit_p | bit_q] *= det;
    }
    return state;
}

OccupationState apply_diagonal_phase(OccupationState state, const std::function<double(BasisIndex)> &phase_of_mask) {
    auto amps = state.mutable_amplitudes();
    for (std::uint32_t mask = 0; mask < amps.size(); ++mask) {
        amps[mask] *= std::polar(1.0, phase_of_mask(BasisIndex{mask}));
    }
    return state;
}

OccupationState apply_rail_phase(OccupationState state, std::size_t rail, double phi) {
    require_rail(state, rail);
    const Amplitude factor = std::polar(1.0, phi);
    const std::uint32_t bit = std::uint32_t{1} << rail;
    auto amps = state.mutable_amplitudes();
    for (std::uint32_t mask = 0; mask < amps.size(); ++mask) {
        if (mask & bit) {
            amps[mask] *= factor;
        }
    }
    return state;
}

BasisIndex sample_mask(std::span<const double> probabilities, RandomStream &rng) {
    double total = 0;
    for (double p : probabilities) {
        total += p;
    }
    const double target = std::uniform_real_distribution<double>(0.0, total)(rng);
    double cumulative = 0;
    std::uint32_t last_nonzero = 0;
    for (std::uint32_t mask = 0; mask < probabilities.size(); ++mask) {
        if (probabilities[mask] <= 0) {
            continue;
        }
        last_nonzero = mask;
        cumulative += probabilities[mask];
        if (target < cumulative) {
            return BasisIndex{mask};
        }
    }
    // Rounding can leave target just past the final cumulative sum.
    return BasisIndex{last_nonzero};
}

Measurement measure_all(const OccupationState &state, RandomStream &rng) {
    const double norm = state.norm_squared();
    if (std::abs(norm - 1.0) > kMeasurementNormTolerance) {
        throw InvalidStateError("cannot measure a state with squared norm " + std::to_string(norm));
    }
    const auto probabilities = state.probabilities();
    const BasisIndex outcome = sample_mask(probabilities, rng);
    std::vector<Amplitude> collapsed(state.dimension());
    collapsed[outcome.mask] = 1.0;
    return Measurement{
        outcome, OccupationState::from_amplitudes(state.n_rails(), std::move(collapsed))};
}

double fidelity(const OccupationState &a, const OccupationState &b) {
    if (a.n_rails() != b.n_rails()) {
        throw std::invalid_argument("fidelity of states with different rail counts");
    }
    Amplitude overlap = 0;
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        overlap += std::conj(x[i]) * y[i];
    }
    return std::min(1.0, std::norm(overlap));
}

}  // namespace flyq
