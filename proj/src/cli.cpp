// Copyright 2026 The Everett Authors
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

#include "everett/cli.hpp"

#include <exception>
#include <iomanip>
#include <ostream>

#include "everett/config.hpp"
#include "everett/report.hpp"

namespace everett {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Config: return exit_code::config;
    case ErrorKind::Io: return exit_code::io;
    case ErrorKind::ResourceCap: return exit_code::resource_cap;
    default: return exit_code::failure;
    }
}

int run_cli(std::span<const std::string> args, std::ostream &out, std::ostream &err) {
    try {
        ParsedCommand parsed = parse_command(args);
        if (!parsed.config) {
            out << parsed.help;
            return exit_code::ok;
        }
        const ExperimentConfig &cfg = *parsed.config;
        check_output_path(cfg.output_path);
        const ExperimentReport report = run_experiment(cfg);
        write_report(emit_report(report, cfg.output_format), cfg.output_path, out);
        err << "everett: " << to_string(cfg.experiment) << " finished in " << std::setprecision(3)
            << report.wall_time_s << " s\n";
        return exit_code::ok;
    } catch (const Error &e) {
        err << "everett: error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        err << "everett: error: " << e.what() << "\n";
        return exit_code::failure;
    }
}

}  // namespace everett
