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

#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "dqcmap/circuit.hpp"
#include "dqcmap/hardware.hpp"
#include "dqcmap/placement.hpp"
#include "dqcmap/segmentation.hpp"

namespace dqcmap {

/// Weights of the objective E = gamma1*E_inter + gamma2*E_local + gamma3*E_move
/// and the unit prices its terms are built from.
struct CostParams {
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double gamma3 = 1.0;
    double cx_cost = 1.0;         // one local two-qubit gate
    double swap_cost = 3.0;       // one routing SWAP
    double remote_op_cost = 5.0;  // one remote gate over a unit-cost link
    double teleport_cost = 5.0;   // one teleport over a unit-cost link

    /// Defaults with remote_op_cost = teleport_cost = ratio * cx_cost.
    static CostParams with_ratio(double ratio);
};

/// Throws ParameterError on negative entries or cx_cost <= 0.
void validate(const CostParams &cp);

/// Logical -> physical qubit placement inside one QPU, sorted by logical qubit.
struct IntraLayout {
    QpuId qpu = 0;
    std::vector<std::pair<Qubit, int>> physical;

    int physical_of(Qubit q) const;
};

struct CostBreakdown {
    double e_inter = 0.0;
    double e_local = 0.0;
    double e_move = 0.0;
    double e_total = 0.0;
    long epr_pairs = 0;
};

/// Greedy layout: qubits in descending order of interaction weight inside the
/// set; the first goes to the highest-degree physical qubit, each later one to
/// the free physical qubit with the smallest weighted distance to its already
/// placed partners. Ties go to the lower index. Throws InfeasibleError when
/// the set does not fit.
IntraLayout intra_layout(const ClusterTopology &cluster, QpuId p, std::span<const Qubit> qubits,
                         const InteractionCount &interactions);

/// Sum over co-located interacting pairs of f_ij * (cx_cost + swap_cost * (d - 1)),
/// with d the coupling-graph distance under each QPU's intra_layout.
double e_local(const Assignment &a, const Segment &seg, const ClusterTopology &cluster, const CostParams &cp);

/// Sum over cut pairs of f_ij * remote_op_cost * inter_distance.
double e_inter(const Assignment &a, const Segment &seg, const ClusterTopology &cluster, const CostParams &cp);

/// Sum over qubits whose QPU changed of teleport_cost * inter_distance.
double e_move(const Assignment &prev, const Assignment &cur, const ClusterTopology &cluster, const CostParams &cp);

/// All three terms, the weighted total, and the EPR pairs the segment
/// consumes (cut gates times route hops plus moved qubits times route hops).
/// prev == nullptr means no predecessor, so E_move = 0.
CostBreakdown total(const Assignment &a, const Segment &seg, const Assignment *prev, const ClusterTopology &cluster,
                    const CostParams &cp);

/// Per-segment evaluation tables shared by the annealer: dense pair counts,
/// neighbour lists, and a cache of per-QPU local costs keyed by member set.
/// Not thread-safe; one optimizer thread owns a model.
class SegmentCostModel {
public:
    SegmentCostModel(const ClusterTopology &cluster, const Segment &seg, const CostParams &cp, int n_qubits);

    const ClusterTopology &cluster() const {
        return *cluster_;
    }
    const CostParams &params() const {
        return cp_;
    }
    const Segment &segment() const {
        return *seg_;
    }
    int n_qubits() const {
        return n_;
    }
    double count(Qubit a, Qubit b) const {
        return counts_[static_cast<std::size_t>(a) * n_ + b];
    }
    const std::vector<std::pair<Qubit, double>> &neighbors(Qubit q) const {
        return neighbors_[q];
    }

    /// Unweighted local cost of one QPU holding `members` (sorted ascending).
    double local_cost(QpuId p, const std::vector<Qubit> &members) const;
    IntraLayout layout(QpuId p, const std::vector<Qubit> &members) const;

private:
    const ClusterTopology *cluster_;
    const Segment *seg_;
    CostParams cp_;
    int n_;
    std::vector<double> counts_;
    std::vector<std::vector<std::pair<Qubit, double>>> neighbors_;
    mutable std::unordered_map<std::string, double> cache_;
};

/// Move one qubit to another QPU.
struct Relocate {
    Qubit qubit = 0;
    QpuId to = 0;
};

/// Exchange the QPUs of two qubits that sit on different QPUs.
struct SwapQubits {
    Qubit a = 0;
    Qubit b = 0;
};

using Move = std::variant<Relocate, SwapQubits>;

/// Current assignment of one segment with its objective terms maintained
/// incrementally.
class AnnealState {
public:
    /// prev == nullptr means no predecessor segment.
    AnnealState(const SegmentCostModel &model, Assignment init, const Assignment *prev);

    const Assignment &assignment() const {
        return assignment_;
    }
    const std::vector<int> &loads() const {
        return loads_;
    }
    const std::vector<Qubit> &members(QpuId p) const {
        return members_[p];
    }
    const SegmentCostModel &model() const {
        return *model_;
    }
    double e_total() const;
    /// Terms as tracked incrementally (epr_pairs left at 0).
    CostBreakdown tracked() const;

    /// E(after move) - E(now). Throws ParameterError for a move that breaks
    /// capacity or swaps qubits on the same QPU.
    double delta(const Move &move) const;
    void apply(const Move &move);

private:
    struct Terms {
        double inter = 0.0;
        double local = 0.0;
        double move = 0.0;
        // Local costs of up to two QPUs after the move.
        QpuId p1 = -1, p2 = -1;
        double local1 = 0.0, local2 = 0.0;
    };
    Terms terms(const Move &move) const;
    double weighted(const Terms &t) const;

    const SegmentCostModel *model_;
    Assignment assignment_;
    const Assignment *prev_;
    std::vector<int> loads_;
    std::vector<std::vector<Qubit>> members_;
    std::vector<double> local_;
    double inter_ = 0.0;
    double local_sum_ = 0.0;
    double move_ = 0.0;
};

/// Incremental objective change of applying `move` to `state`.
double delta_total(const AnnealState &state, const Move &move);

}  // namespace dqcmap
