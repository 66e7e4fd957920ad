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

#include "flyq/dual_rail.h"

#include <numbers>
#include <set>
#include <stdexcept>

namespace flyq {

namespace {

constexpr double kPi = std::numbers::pi;

GateElement phase(std::size_t rail, double phi) {
    return GateElement{PhaseShifter{rail, phi}, std::nullopt};
}

GateElement splitter(RailPair pair) {
    return GateElement{WaveguideCoupler{pair, kHalfTransferLengthUm, kTransferLengthUm}, std::nullopt};
}

}  // namespace

std::string to_string(LogicalBit bit) {
    switch (bit) {
        case LogicalBit::zero:
            return "0";
        case LogicalBit::one:
            return "1";
        case LogicalBit::leak:
            return "LEAK";
    }
    return "?";
}

void validate_register(const DualRailRegister &reg, std::size_t n_rails) {
    std::set<std::size_t> seen;
    for (const auto &pair : reg.pairs) {
        for (auto rail : {pair.first, pair.second}) {
            if (rail >= n_rails) {
                throw std::invalid_argument("dual-rail register references rail " + std::to_string(rail) + " out of range");
            }
            if (!seen.insert(rail).second) {
                throw std::invalid_argument("dual-rail register uses rail " + std::to_string(rail) + " twice");
            }
        }
    }
}

OccupationState encode(const DualRailRegister &reg, std::span<const int> bits, std::size_t n_rails) {
    validate_register(reg, n_rails);
    if (bits.size() != reg.pairs.size()) {
        throw std::invalid_argument("encode needs one bit per dual-rail pair");
    }
    std::vector<std::size_t> occupied;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] != 0 && bits[k] != 1) {
            throw std::invalid_argument("logical bits must be 0 or 1");
        }
        occupied.push_back(bits[k] == 0 ? reg.pairs[k].first : reg.pairs[k].second);
    }
    return OccupationState::prepare_occupation(n_rails, occupied);
}

LogicalOutcome decode(BasisIndex mask, const DualRailRegister &reg) {
    LogicalOutcome out;
    out.bits.reserve(reg.pairs.size());
    for (const auto &pair : reg.pairs) {
        const bool a = mask.occupied(pair.first);
        const bool b = mask.occupied(pair.second);
        if (a && !b) {
            out.bits.push_back(LogicalBit::zero);
        } else if (!a && b) {
            out.bits.push_back(LogicalBit::one);
        } else {
            out.bits.push_back(LogicalBit::leak);
        }
    }
    return out;
}

std::vector<GateElement> logical_hadamard(RailPair pair) {
    if (pair.first == pair.second) {
        throw std::invalid_argument("hadamard rails must be distinct");
    }
    // diag(1, -i) * (1/sqrt2)[[1, i], [i, 1]] * diag(1, -i) = H
    return {phase(pair.second, -kPi / 2), splitter(pair), phase(pair.second, -kPi / 2)};
}

std::vector<GateElement> fredkin_circuit(std::size_t control_rail, RailPair target) {
    if (target.first == target.second || control_rail == target.first || control_rail == target.second) {
        throw std::invalid_argument("fredkin needs three distinct rails");
    }
    return {
        phase(target.second, -kPi / 2),
        splitter(target),
        phase(target.first, kPi),
        GateElement{CoulombCoupler{RailPair{control_rail, target.first}, kPi / 2}, std::nullopt},
        splitter(target),
        phase(target.first, kPi / 2),
    };
}

}  // namespace flyq
