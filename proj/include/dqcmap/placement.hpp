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
#include <map>
#include <utility>
#include <vector>

#include "dqcmap/circuit.hpp"
#include "dqcmap/hardware.hpp"
#include "dqcmap/segmentation.hpp"

namespace dqcmap {

/// Undirected weighted graph over logical qubits. Only positive weights are
/// stored.
class InteractionGraph {
public:
    explicit InteractionGraph(int n_qubits);

    void add(Qubit a, Qubit b, double w);

    int n_qubits() const {
        return n_;
    }
    double weight(Qubit a, Qubit b) const;
    const std::map<QubitPair, double> &edges() const {
        return edges_;
    }
    std::vector<std::vector<std::pair<Qubit, double>>> adjacency() const;

private:
    int n_;
    std::map<QubitPair, double> edges_;
};

/// Qubit -> QPU map for one segment. -1 marks an unassigned qubit.
struct Assignment {
    std::vector<QpuId> qpu_of;
    int segment = 1;

    int n_qubits() const {
        return static_cast<int>(qpu_of.size());
    }
    std::vector<int> loads(int n_qpus) const;
    bool operator==(const Assignment &) const = default;
};

bool is_feasible(const Assignment &a, const ClusterTopology &cluster);

/// Throws InfeasibleError when the cluster cannot hold n_qubits.
void check_capacity(int n_qubits, const ClusterTopology &cluster);

/// Time-decayed interaction graph: w_ij = sum_s exp(-lambda * s) * f_ij^(s),
/// with s the 1-based segment position.
InteractionGraph build_graph(const std::vector<Segment> &segments, double lambda, int n_qubits);

/// lambda = 3 / S, so the last segment's coefficient is about exp(-3).
double default_lambda(int n_segments);

/// Total weight of edges whose endpoints sit on different QPUs.
double edge_cut(const InteractionGraph &g, const Assignment &a);

/// The `count` largest QPUs by capacity, ties to the lower id.
std::vector<QpuId> largest_qpus(const ClusterTopology &cluster, int count);

/// Greedy agglomerative clustering into `partitions` groups followed by a
/// size-to-capacity matching onto the largest QPUs and repair_capacity.
Assignment cluster_graph(const InteractionGraph &g, const ClusterTopology &cluster, int partitions);

/// Moves qubits off over-full QPUs, weakest internal connection first, to the
/// nearest (in link hops) QPUs with room, picking the destination with the
/// smallest cut increase.
Assignment repair_capacity(Assignment a, const InteractionGraph &g, const ClusterTopology &cluster);

/// Uniformly random injection of the logical qubits into the cluster's
/// physical qubit slots, reduced to QPU granularity.
Assignment random_placement(int n_qubits, const ClusterTopology &cluster, std::uint64_t seed);

}  // namespace dqcmap
