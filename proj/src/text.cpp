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

#include "everett/text.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "everett/error.hpp"

namespace everett {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw Error(ErrorKind::Internal, "cannot format double");
    }
    return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
    std::string_view body = s;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::InvalidArgument, "'" + std::string(s) + "' is not a finite number");
    }
    return v;
}

std::pair<std::size_t, std::size_t> parse_split(std::string_view s) {
    const auto x = s.find('x');
    auto part = [&](std::string_view p) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
        if (p.empty() || ec != std::errc{} || ptr != p.data() + p.size() || v == 0) {
            throw Error(ErrorKind::InvalidArgument, "split '" + std::string(s) + "' is not of the form AxB");
        }
        return v;
    };
    if (x == std::string_view::npos) {
        throw Error(ErrorKind::InvalidArgument, "split '" + std::string(s) + "' is not of the form AxB");
    }
    return {part(s.substr(0, x)), part(s.substr(x + 1))};
}

std::vector<std::complex<double>> parse_amplitudes(std::string_view s) {
    std::vector<std::complex<double>> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const std::string token = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
        const auto colon = token.find(':');
        if (colon == std::string::npos) {
            out.emplace_back(parse_double(token), 0.0);
        } else {
            out.emplace_back(parse_double(trim(token.substr(0, colon))), parse_double(trim(token.substr(colon + 1))));
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace everett
