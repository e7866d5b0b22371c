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

// Locale-independent number formatting and parsing helpers.

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace everett {

std::string trim(std::string_view s);

/// "%.17g" formatting for a finite double with a "." decimal
/// separator regardless of locale.
std::string format_double(double v);

/// Whole-string double parse; throws InvalidArgument otherwise.
double parse_double(std::string_view s);

/// "AxB" with A, B >= 1.
std::pair<std::size_t, std::size_t> parse_split(std::string_view s);

/// Comma-separated `re` or `re:im` tokens.
std::vector<std::complex<double>> parse_amplitudes(std::string_view s);

}  // namespace everett
