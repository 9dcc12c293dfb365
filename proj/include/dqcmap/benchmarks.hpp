// Copyright 2026 The dqcmap Authors
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

#include <cstdint>

#include "dqcmap/circuit.hpp"

namespace dqcmap {

/// Textbook QFT: H and a controlled-phase ladder per qubit, then the
/// qubit-reversal swaps. n(n-1)/2 + floor(n/2) two-qubit gates.
Circuit gen_qft(int n);

/// QAOA MaxCut ansatz on a random 3-regular graph with p_layers rounds. Each
/// edge's ZZ term is cx-rz-cx; the mixer is rx on every qubit. n must be even
/// and at least 4.
Circuit gen_qaoa(int n, int p_layers, std::uint64_t seed);

/// CDKM ripple-carry adder on n qubits in total: carry-in, two (n-2)/2-bit
/// operands, carry-out. Toffolis are expanded into the standard 6-CNOT form.
/// n must be even and at least 4.
Circuit gen_adder(int n);

}  // namespace dqcmap
