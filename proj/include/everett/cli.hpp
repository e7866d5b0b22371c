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

#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "everett/error.hpp"

namespace everett {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int config = 2;
inline constexpr int io = 3;
inline constexpr int resource_cap = 4;
}  // namespace exit_code

int exit_code_for(ErrorKind kind);

/// Full command-line run: parse, validate, execute one experiment, write the
/// report. `args` excludes the program name. Diagnostics go to `err`.
int run_cli(std::span<const std::string> args, std::ostream &out, std::ostream &err);

}  // namespace everett
