# Copyright 2026 The Everett Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the everett branching-dynamics library.

States are numpy complex vectors. Splits are ``(dim_i, dim_ii)`` pairs with
subsystem I as the more significant tensor factor.
"""

from ._everett import (
    EverettError,
    __version__,
    evolution_walk,
    haar_random_state,
    overlap_statistics,
    partial_trace,
    polarizer_chain,
    premeasurement_unitary,
    random_projection_chain,
    run_branching_protocol,
    run_chain_protocol,
    run_cli,
    schmidt_decompose,
    spectra_gap,
    world_count,
)

__all__ = [
    "EverettError",
    "__version__",
    "evolution_walk",
    "haar_random_state",
    "overlap_statistics",
    "partial_trace",
    "polarizer_chain",
    "premeasurement_unitary",
    "random_projection_chain",
    "run_branching_protocol",
    "run_chain_protocol",
    "run_cli",
    "schmidt_decompose",
    "spectra_gap",
    "world_count",
]
