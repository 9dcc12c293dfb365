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

#include <string>
#include <string_view>

#include "dqcmap/circuit.hpp"

namespace dqcmap {

/// Parses the OpenQASM 2.0 subset used by the mapper: one qreg, any number of
/// cregs, barrier, measure, reset, and standard one- and two-qubit gates.
/// Throws ParseError (with line number) on malformed input and
/// UnsupportedError for gates on three or more qubits, gate definitions,
/// classical control, or a second qreg.
Circuit parse_qasm(std::string_view text, std::string name = "circuit");

/// Writes the circuit back out in the same subset. Angles use the shortest
/// decimal form that reads back to the identical double.
std::string to_qasm(const Circuit &circuit);

}  // namespace dqcmap
