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

#include "flyq/circuit.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "flyq/errors.h"
#include "overloaded.h"

namespace flyq {

using internal::overloaded;

std::vector<std::size_t> instruction_rails(const Instruction &instruction) {
    return std::visit(
        overloaded{
            [](const GateElement &e) { return element_rails(e); },
            [](const MacroCall &m) { return m.rails; },
        },
        instruction);
}

Circuit::Circuit(std::size_t n_rails) : n_rails_(n_rails), segments_(n_rails, std::vector<double>{0.0}) {
    if (n_rails == 0) {
        throw std::invalid_argument("a circuit needs at least one rail");
    }
    if (n_rails > kMaxRails) {
        throw CapacityError("at most " + std::to_string(kMaxRails) + " rails are supported");
    }
}

void Circuit::require_rail(std::size_t rail, const char *what) const {
    if (rail >= n_rails_) {
        throw std::invalid_argument(std::string(what) + " rail " + std::to_string(rail) + " out of range");
    }
}

void Circuit::add_segment(std::size_t rail, double length_um) {
    require_rail(rail, "segment");
    if (!std::isfinite(length_um) || length_um < 0) {
        throw std::invalid_argument("segment length must be finite and non-negative");
    }
    segments_[rail].back() += length_um;
}

void Circuit::append(const Instruction &instruction) {
    for (auto rail : instruction_rails(instruction)) {
        segments_[rail].push_back(0.0);
    }
    instructions_.push_back(instruction);
}

void Circuit::add_element(const GateElement &element) {
    validate_element(element, n_rails_);
    append(element);
}

void Circuit::add_macro(const MacroCall &macro) {
    const std::size_t expected = macro.kind == MacroKind::hadamard ? 2 : 3;
    if (macro.rails.size() != expected) {
        throw std::invalid_argument("macro takes " + std::to_string(expected) + " rails");
    }
    for (std::size_t i = 0; i < macro.rails.size(); ++i) {
        require_rail(macro.rails[i], "macro");
        for (std::size_t j = 0; j < i; ++j) {
            if (macro.rails[i] == macro.rails[j]) {
                throw std::invalid_argument("macro rails must be distinct");
            }
        }
    }
    append(macro);
}

void Circuit::add_source(const SepSource &source) {
    require_rail(source.rail, "source");
    if (!std::isfinite(source.emission_delay_ps) || source.emission_delay_ps < 0) {
        throw std::invalid_argument("emission delay must be finite and non-negative");
    }
    if (source_for(source.rail) != nullptr) {
        throw std::invalid_argument("rail " + std::to_string(source.rail) + " already has a source");
    }
    sources_.push_back(source);
}

void Circuit::add_detector(std::size_t rail) {
    require_rail(rail, "detector");
    if (is_detected(rail)) {
        throw std::invalid_argument("rail " + std::to_string(rail) + " already has a detector");
    }
    detectors_.push_back(rail);
}

void Circuit::add_register(const RegisterDecl &decl) {
    for (const auto &existing : registers_) {
        if (existing.name == decl.name) {
            throw std::invalid_argument("register '" + decl.name + "' declared twice");
        }
    }
    DualRailRegister combined = dual_rail_register();
    combined.pairs.push_back(decl.pair);
    validate_register(combined, n_rails_);
    registers_.push_back(decl);
}

bool Circuit::has_macros() const {
    return std::any_of(instructions_.begin(), instructions_.end(), [](const Instruction &i) {
        return std::holds_alternative<MacroCall>(i);
    });
}

const SepSource *Circuit::source_for(std::size_t rail) const {
    for (const auto &s : sources_) {
        if (s.rail == rail) {
            return &s;
        }
    }
    return nullptr;
}

bool Circuit::is_detected(std::size_t rail) const {
    return std::find(detectors_.begin(), detectors_.end(), rail) != detectors_.end();
}

DualRailRegister Circuit::dual_rail_register() const {
    DualRailRegister reg;
    for (const auto &decl : registers_) {
        reg.pairs.push_back(decl.pair);
    }
    return reg;
}

std::vector<GateElement> Circuit::elements() const {
    std::vector<GateElement> out;
    for (const auto &instruction : instructions_) {
        const auto *element = std::get_if<GateElement>(&instruction);
        if (element == nullptr) {
            throw ConfigurationError("circuit still contains composite macros; expand them first");
        }
        out.push_back(*element);
    }
    return out;
}

std::vector<double> Circuit::rail_path_lengths() const {
    std::vector<double> lengths(n_rails_, 0.0);
    for (std::size_t r = 0; r < n_rails_; ++r) {
        for (double s : segments_[r]) {
            lengths[r] += s;
        }
    }
    for (const auto &element : elements()) {
        const double len = physical_length(element);
        for (auto rail : element_rails(element)) {
            lengths[rail] += len;
        }
    }
    return lengths;
}

Circuit expand_composites(const Circuit &circuit) {
    Circuit out(circuit.n_rails());
    for (const auto &s : circuit.sources()) {
        out.add_source(s);
    }
    for (const auto &r : circuit.registers()) {
        out.add_register(r);
    }
    std::vector<std::size_t> slot(circuit.n_rails(), 0);
    const auto &segments = circuit.segments();
    for (const auto &instruction : circuit.instructions()) {
        for (auto rail : instruction_rails(instruction)) {
            const double wire = segments[rail][slot[rail]++];
            if (wire != 0) {
                out.add_segment(rail, wire);
            }
        }
        std::visit(
            overloaded{
                [&](const GateElement &e) { out.add_element(e); },
                [&](const MacroCall &m) {
                    const auto expansion = m.kind == MacroKind::hadamard
                                               ? logical_hadamard(RailPair{m.rails[0], m.rails[1]})
                                               : fredkin_circuit(m.rails[0], RailPair{m.rails[1], m.rails[2]});
                    for (const auto &e : expansion) {
                        out.add_element(e);
                    }
                },
            },
            instruction);
    }
    for (std::size_t rail = 0; rail < circuit.n_rails(); ++rail) {
        const double wire = segments[rail].back();
        if (wire != 0) {
            out.add_segment(rail, wire);
        }
    }
    for (auto d : circuit.detectors()) {
        out.add_detector(d);
    }
    return out;
}

}  // namespace flyq
