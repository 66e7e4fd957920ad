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

#ifndef FLYQ_RUN_H
#define FLYQ_RUN_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "flyq/budget.h"
#include "flyq/timing.h"

namespace flyq {

enum class OutputFormat { human, machine };

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitSchedule = 3,
};

struct RunConfig {
    std::string input_path;
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    DephasingMode dephasing = DephasingMode::off;
    double l_phi_um = kGaAsCoherenceLengthUm;
    double velocity_um_per_ps = kDefaultVelocityUmPerPs;
    double window_ps = kDefaultCoincidenceWindowPs;
    double gate_length_um = kDefaultGateLengthUm;
    OutputFormat format = OutputFormat::human;
    bool allow_desync = false;
};

/// Checks the numeric invariants of a config; returns an error message or nothing.
std::optional<std::string> validate(const RunConfig &config);

std::optional<DephasingMode> parse_dephasing_mode(std::string_view name);
std::string_view to_string(DephasingMode mode);

/// parse -> expand -> schedule check -> simulate -> report, for netlist text
/// already in memory. Reports go to `out`, diagnostics to `err`.
int run_netlist(const RunConfig &config, std::string_view netlist, std::ostream &out, std::ostream &err);

/// Reads config.input_path and calls run_netlist.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

}  // namespace flyq

#endif
