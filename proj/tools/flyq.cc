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

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "flyq/netlist.h"
#include "flyq/run.h"

namespace {

int expand_command(const std::string &path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot read " << path << "\n";
        return flyq::kExitUsage;
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    const auto parsed = flyq::parse_netlist(buffer.str());
    for (const auto &d : parsed.diagnostics) {
        std::cerr << path << ":" << flyq::format_diagnostic(d) << "\n";
    }
    if (!parsed.ok()) {
        return flyq::kExitParse;
    }
    std::cout << flyq::serialize_netlist(flyq::expand_composites(*parsed.circuit));
    return flyq::kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"flyq: ballistic single-electron flying-qubit circuit simulator"};
    app.require_subcommand(1);

    flyq::RunConfig config;
    std::string dephasing = "off";
    std::string format = "human";

    auto *run = app.add_subcommand("run", "Parse, schedule-check, simulate and report a netlist");
    run->add_option("netlist", config.input_path, "Netlist file")->required();
    run->add_option("--shots", config.shots, "Number of single-shot readouts")->capture_default_str();
    run->add_option("--seed", config.seed, "Master seed for the per-shot random streams")->capture_default_str();
    run->add_option("--dephasing", dephasing, "Dephasing mode")
        ->check(CLI::IsMember({"off", "factor", "mc"}))
        ->capture_default_str();
    run->add_option("--lphi", config.l_phi_um, "Phase coherence length (um)")->capture_default_str();
    run->add_option("--velocity", config.velocity_um_per_ps, "Electron group velocity (um/ps)")
        ->capture_default_str();
    run->add_option("--window", config.window_ps, "Coincidence window (ps)")->capture_default_str();
    run->add_option("--gate-length", config.gate_length_um, "Assumed gate length for the budget (um)")
        ->capture_default_str();
    run->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"human", "machine"}))
        ->capture_default_str();
    run->add_flag("--allow-desync", config.allow_desync, "Simulate even if coincidence checks fail");

    std::string expand_path;
    auto *expand = app.add_subcommand("expand", "Print the canonical netlist with composites expanded");
    expand->add_option("netlist", expand_path, "Netlist file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : flyq::kExitUsage;
    }

    if (*expand) {
        return expand_command(expand_path);
    }
    config.dephasing = *flyq::parse_dephasing_mode(dephasing);
    config.format = format == "machine" ? flyq::OutputFormat::machine : flyq::OutputFormat::human;
    return flyq::run(config, std::cout, std::cerr);
}
