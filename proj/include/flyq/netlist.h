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

#ifndef FLYQ_NETLIST_H
#define FLYQ_NETLIST_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flyq/circuit.h"

namespace flyq {

/*
 * Line-oriented netlist format. One statement per line; '#' starts a comment.
 * Keywords, attribute names and unit suffixes are case-insensitive; rail names
 * (q0, q1, ...) and register names are not. Physical quantities must carry
 * their unit suffix.
 *
 *   rails <n>
 *   segment <rail> <length>um
 *   sep <rail> [delay=<t>ps] [empty]
 *   ps <rail> phi=<x>rad [len=<x>um]
 *   bs <railA> <railB> lc=<x>um lt=<x>um [len=<x>um]
 *   cc <railA> <railB> chit=<x>rad [len=<x>um]
 *   hadamard <rail0> <rail1>
 *   fredkin <control> <target0> <target1>
 *   dualrail <name> <rail0> <rail1>
 *   set <rail>
 */

enum class Severity { error, warning };

struct ParseDiagnostic {
    int line = 1;
    int column = 1;
    std::string message;
    Severity severity = Severity::error;

    bool operator==(const ParseDiagnostic &) const = default;
};

/// "<line>:<column>: error: <message>"
std::string format_diagnostic(const ParseDiagnostic &diagnostic);

struct ParseResult {
    std::optional<Circuit> circuit;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const {
        return circuit.has_value();
    }
};

/// Total: never throws on malformed input. On any error-severity diagnostic
/// the circuit is empty; warnings may accompany a successful parse.
ParseResult parse_netlist(std::string_view source_text);

/// Canonical text: rails, sources, registers, the instruction stream with its
/// wiring, trailing wiring, detectors. Numbers use the shortest representation
/// that reads back to the same double.
std::string serialize_netlist(const Circuit &circuit);

/// Short human-readable label such as "cc q0 q1" for reports.
std::string describe(const Instruction &instruction);

}  // namespace flyq

#endif
