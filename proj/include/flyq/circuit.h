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

#ifndef FLYQ_CIRCUIT_H
#define FLYQ_CIRCUIT_H

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "flyq/dual_rail.h"
#include "flyq/gates.h"

namespace flyq {

/// Single electron pump feeding one rail. The gate pulse train is abstracted
/// into one programmable emission delay.
struct SepSource {
    std::size_t rail = 0;
    double emission_delay_ps = 0;
    /// False for a vacuum input on this rail.
    bool emits = true;

    bool operator==(const SepSource &) const = default;
};

enum class MacroKind { hadamard, fredkin };

/// Composite gate placeholder, replaced by primitives in expand_composites().
/// hadamard: rails = {rail0, rail1}; fredkin: rails = {control, target0, target1}.
struct MacroCall {
    MacroKind kind = MacroKind::hadamard;
    std::vector<std::size_t> rails;

    bool operator==(const MacroCall &) const = default;
};

using Instruction = std::variant<GateElement, MacroCall>;

/// One named dual-rail qubit.
struct RegisterDecl {
    std::string name;
    RailPair pair;

    bool operator==(const RegisterDecl &) const = default;
};

std::vector<std::size_t> instruction_rails(const Instruction &instruction);

/// Rails, placed elements and the wiring between them.
///
/// Wire lengths are kept per rail and per slot: segments()[r][k] is the length
/// travelled on rail r before the k-th instruction that touches r, and the last
/// entry is the trailing wire to the detector. The builder methods keep
/// segments()[r].size() == (instructions on r) + 1.
class Circuit {
   public:
    explicit Circuit(std::size_t n_rails);

    std::size_t n_rails() const {
        return n_rails_;
    }

    /// Adds wire to the slot before the next instruction on `rail`.
    void add_segment(std::size_t rail, double length_um);
    void add_element(const GateElement &element);
    void add_macro(const MacroCall &macro);
    void add_source(const SepSource &source);
    void add_detector(std::size_t rail);
    void add_register(const RegisterDecl &decl);

    const std::vector<Instruction> &instructions() const {
        return instructions_;
    }
    const std::vector<std::vector<double>> &segments() const {
        return segments_;
    }
    const std::vector<SepSource> &sources() const {
        return sources_;
    }
    const std::vector<std::size_t> &detectors() const {
        return detectors_;
    }
    const std::vector<RegisterDecl> &registers() const {
        return registers_;
    }

    bool has_macros() const;
    const SepSource *source_for(std::size_t rail) const;
    bool is_detected(std::size_t rail) const;

    /// All declared pairs in declaration order.
    DualRailRegister dual_rail_register() const;

    /// Primitive elements in order. Throws ConfigurationError if macros remain.
    std::vector<GateElement> elements() const;

    /// Total path on each rail: every segment plus the physical length of every
    /// element the rail passes through. Throws ConfigurationError if macros remain.
    std::vector<double> rail_path_lengths() const;

    bool operator==(const Circuit &) const = default;

   private:
    void require_rail(std::size_t rail, const char *what) const;
    void append(const Instruction &instruction);

    std::size_t n_rails_;
    std::vector<Instruction> instructions_;
    std::vector<std::vector<double>> segments_;
    std::vector<SepSource> sources_;
    std::vector<std::size_t> detectors_;
    std::vector<RegisterDecl> registers_;
};

/// Replaces every macro with its dual-rail synthesis. Wire before a macro on a
/// rail becomes wire before the first expanded element on that rail.
Circuit expand_composites(const Circuit &circuit);

}  // namespace flyq

#endif
