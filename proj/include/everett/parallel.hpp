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

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace everett {

/// Evaluates f(i) for i in [0, n) on `threads` workers and returns the
/// results indexed by i. Callers reduce the vector in index order, so the
/// worker count never changes the result bits.
template <typename F>
auto evaluate_indexed(std::uint64_t n, unsigned threads, F &&f) {
    using T = decltype(f(std::uint64_t{0}));
    std::vector<T> out(n);
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    const std::uint64_t workers = std::min<std::uint64_t>(threads, n);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint64_t i = w; i < n; i += workers) out[i] = f(i);
        });
    }
    return out;
}

}  // namespace everett
