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

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dqcmap {

using Qubit = int;

enum class OpKind { Gate, Barrier, Measure, Reset };

/// One operation in source order. Only unitary gates on two qubits feed the
/// interaction statistics; barriers, measurements and resets are kept so the
/// circuit can be written back out.
struct GateOp {
    std::string name;
    std::vector<Qubit> qubits;
    std::vector<double> params;
    int clbit = -1;  // measurement target, flat index over all classical registers

    OpKind kind() const;
    bool is_two_qubit_gate() const {
        return kind() == OpKind::Gate && qubits.size() == 2;
    }

    bool operator==(const GateOp &) const = default;
};

struct ClassicalRegister {
    std::string name;
    int size = 0;

    bool operator==(const ClassicalRegister &) const = default;
};

class Circuit {
public:
    explicit Circuit(int n_qubits, std::string name = "circuit", std::string qreg_name = "q");

    /// Appends an operation after checking qubit indices (in range, distinct).
    void append(GateOp op);

    void gate(std::string name, std::vector<Qubit> qubits, std::vector<double> params = {}) {
        append(GateOp{std::move(name), std::move(qubits), std::move(params)});
    }

    void add_creg(std::string name, int size);

    int n_qubits() const {
        return n_qubits_;
    }
    int n_clbits() const;
    const std::string &name() const {
        return name_;
    }
    void set_name(std::string name) {
        name_ = std::move(name);
    }
    const std::string &qreg_name() const {
        return qreg_name_;
    }
    const std::vector<ClassicalRegister> &cregs() const {
        return cregs_;
    }
    const std::vector<GateOp> &ops() const {
        return ops_;
    }
    std::size_t size() const {
        return ops_.size();
    }
    std::size_t two_qubit_gate_count() const;

private:
    int n_qubits_;
    std::string name_;
    std::string qreg_name_;
    std::vector<ClassicalRegister> cregs_;
    std::vector<GateOp> ops_;
};

/// Unordered qubit pair, stored with lo < hi.
struct QubitPair {
    Qubit lo = 0;
    Qubit hi = 0;

    static QubitPair of(Qubit a, Qubit b) {
        return a < b ? QubitPair{a, b} : QubitPair{b, a};
    }
    auto operator<=>(const QubitPair &) const = default;
};

/// Number of two-qubit gates per qubit pair over some layer interval (f_ij).
struct InteractionCount {
    std::map<QubitPair, long> pairs;

    void add(Qubit a, Qubit b, long n = 1) {
        pairs[QubitPair::of(a, b)] += n;
    }
    long get(Qubit a, Qubit b) const;
    long total() const;
    bool empty() const {
        return pairs.empty();
    }
    bool operator==(const InteractionCount &) const = default;
};

/// A circuit scheduled into ASAP dependency layers. Layers are numbered
/// 1..depth(). A gate's layer is one past the latest layer of any earlier op
/// sharing a qubit with it; a barrier is scheduled like a gate over its
/// qubits, so everything after it on those qubits starts a new layer.
class LayeredCircuit {
public:
    explicit LayeredCircuit(Circuit circuit);

    const Circuit &circuit() const {
        return circuit_;
    }
    int n_qubits() const {
        return circuit_.n_qubits();
    }
    int depth() const {
        return static_cast<int>(layers_.size());
    }
    /// Op indices scheduled in layer l (1-based).
    std::span<const std::size_t> layer(int l) const;
    /// Layer of op index g (1-based).
    int layer_of(std::size_t g) const {
        return op_layer_[g];
    }
    /// D_q(l): two-qubit gates touching q in layers 1..l, for 0 <= l <= depth.
    long cumulative_two_qubit(Qubit q, int l) const;
    /// Two-qubit gates scheduled in layer l.
    long two_qubit_in_layer(int l) const;

private:
    Circuit circuit_;
    std::vector<std::vector<std::size_t>> layers_;
    std::vector<int> op_layer_;
    // Row-major [q * (depth + 1) + l].
    std::vector<long> cumulative_;
};

LayeredCircuit layerize(Circuit circuit);

/// Two-qubit gate counts over layers [from_layer, to_layer], inclusive.
/// Throws RangeError unless 1 <= from_layer <= to_layer <= depth.
InteractionCount count_interactions(const LayeredCircuit &lc, int from_layer, int to_layer);

}  // namespace dqcmap
