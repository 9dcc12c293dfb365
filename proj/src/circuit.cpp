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

#include "dqcmap/circuit.hpp"

#include <algorithm>
#include <numeric>

#include "dqcmap/errors.hpp"

namespace dqcmap {

OpKind GateOp::kind() const {
    if (name == "barrier") {
        return OpKind::Barrier;
    }
    if (name == "measure") {
        return OpKind::Measure;
    }
    if (name == "reset") {
        return OpKind::Reset;
    }
    return OpKind::Gate;
}

Circuit::Circuit(int n_qubits, std::string name, std::string qreg_name)
    : n_qubits_(n_qubits), name_(std::move(name)), qreg_name_(std::move(qreg_name)) {
    if (n_qubits < 1) {
        throw ValidationError("circuit needs at least one qubit");
    }
}

void Circuit::append(GateOp op) {
    if (op.qubits.empty()) {
        throw ValidationError("operation '" + op.name + "' has no qubits");
    }
    if (op.kind() == OpKind::Gate && op.qubits.size() > 2) {
        throw UnsupportedError("gate '" + op.name + "' acts on " + std::to_string(op.qubits.size()) +
                               " qubits; decompose first");
    }
    for (std::size_t i = 0; i < op.qubits.size(); ++i) {
        Qubit q = op.qubits[i];
        if (q < 0 || q >= n_qubits_) {
            throw ValidationError("qubit index " + std::to_string(q) + " out of range for '" + op.name + "'");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (op.qubits[j] == q) {
                throw ValidationError("repeated qubit " + std::to_string(q) + " in '" + op.name + "'");
            }
        }
    }
    if (op.kind() == OpKind::Measure) {
        if (op.qubits.size() != 1 || op.clbit < 0 || op.clbit >= n_clbits()) {
            throw ValidationError("measure needs one qubit and a valid classical bit");
        }
    }
    ops_.push_back(std::move(op));
}

void Circuit::add_creg(std::string name, int size) {
    if (size < 1) {
        throw ValidationError("classical register '" + name + "' must have positive size");
    }
    cregs_.push_back({std::move(name), size});
}

int Circuit::n_clbits() const {
    int n = 0;
    for (const auto &r : cregs_) {
        n += r.size;
    }
    return n;
}

std::size_t Circuit::two_qubit_gate_count() const {
    return static_cast<std::size_t>(
        std::count_if(ops_.begin(), ops_.end(), [](const GateOp &op) { return op.is_two_qubit_gate(); }));
}

long InteractionCount::get(Qubit a, Qubit b) const {
    auto it = pairs.find(QubitPair::of(a, b));
    return it == pairs.end() ? 0 : it->second;
}

long InteractionCount::total() const {
    long n = 0;
    for (const auto &[pair, count] : pairs) {
        n += count;
    }
    return n;
}

LayeredCircuit::LayeredCircuit(Circuit circuit) : circuit_(std::move(circuit)) {
    const int n = circuit_.n_qubits();
    std::vector<int> frontier(n, 0);
    op_layer_.reserve(circuit_.size());
    for (std::size_t g = 0; g < circuit_.size(); ++g) {
        const auto &op = circuit_.ops()[g];
        int layer = 0;
        for (Qubit q : op.qubits) {
            layer = std::max(layer, frontier[q]);
        }
        ++layer;
        for (Qubit q : op.qubits) {
            frontier[q] = layer;
        }
        if (layer > static_cast<int>(layers_.size())) {
            layers_.resize(layer);
        }
        layers_[layer - 1].push_back(g);
        op_layer_.push_back(layer);
    }

    const int d = depth();
    cumulative_.assign(static_cast<std::size_t>(n) * (d + 1), 0);
    for (std::size_t g = 0; g < circuit_.size(); ++g) {
        const auto &op = circuit_.ops()[g];
        if (!op.is_two_qubit_gate()) {
            continue;
        }
        for (Qubit q : op.qubits) {
            ++cumulative_[static_cast<std::size_t>(q) * (d + 1) + op_layer_[g]];
        }
    }
    for (int q = 0; q < n; ++q) {
        auto row = cumulative_.begin() + static_cast<std::ptrdiff_t>(q) * (d + 1);
        std::partial_sum(row, row + d + 1, row);
    }
}

std::span<const std::size_t> LayeredCircuit::layer(int l) const {
    if (l < 1 || l > depth()) {
        throw RangeError("layer " + std::to_string(l) + " outside 1.." + std::to_string(depth()));
    }
    return layers_[l - 1];
}

long LayeredCircuit::cumulative_two_qubit(Qubit q, int l) const {
    if (q < 0 || q >= n_qubits() || l < 0 || l > depth()) {
        throw RangeError("cumulative count query out of range");
    }
    return cumulative_[static_cast<std::size_t>(q) * (depth() + 1) + l];
}

long LayeredCircuit::two_qubit_in_layer(int l) const {
    long n = 0;
    for (std::size_t g : layer(l)) {
        n += circuit_.ops()[g].is_two_qubit_gate() ? 1 : 0;
    }
    return n;
}

LayeredCircuit layerize(Circuit circuit) {
    return LayeredCircuit(std::move(circuit));
}

InteractionCount count_interactions(const LayeredCircuit &lc, int from_layer, int to_layer) {
    if (from_layer < 1 || from_layer > to_layer || to_layer > lc.depth()) {
        throw RangeError("layer interval [" + std::to_string(from_layer) + ", " + std::to_string(to_layer) +
                         "] invalid for depth " + std::to_string(lc.depth()));
    }
    InteractionCount counts;
    for (int l = from_layer; l <= to_layer; ++l) {
        for (std::size_t g : lc.layer(l)) {
            const auto &op = lc.circuit().ops()[g];
            if (op.is_two_qubit_gate()) {
                counts.add(op.qubits[0], op.qubits[1]);
            }
        }
    }
    return counts;
}

}  // namespace dqcmap
