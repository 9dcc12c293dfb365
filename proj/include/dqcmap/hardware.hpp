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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dqcmap {

using QpuId = int;

/// One processor: computational qubits 0..comp_capacity-1 wired by an
/// undirected coupling map, plus communication qubits that only matter for
/// reporting.
struct Qpu {
    std::string name;
    int comp_capacity = 0;
    std::vector<std::pair<int, int>> coupling;
    int comm_qubits = 1;
};

/// Undirected quantum link between two QPUs. cost_factor scales every remote
/// operation or teleport routed over it.
struct Link {
    QpuId a = 0;
    QpuId b = 0;
    double cost_factor = 1.0;
};

/// Shortest-path tables for one cluster: hop counts inside each QPU's coupling
/// graph and cost_factor-weighted distances on the QPU link graph. The
/// inter-QPU route between two QPUs is fixed (the one the weighted distances
/// are measured along), so hop counts and paths agree with the distances.
class DistanceTables {
public:
    DistanceTables() = default;
    DistanceTables(const std::vector<Qpu> &qpus, const std::vector<Link> &links);

    int intra(QpuId p, int i, int j) const {
        return intra_[p][static_cast<std::size_t>(i) * capacity_[p] + j];
    }
    double inter(QpuId a, QpuId b) const {
        return inter_[static_cast<std::size_t>(a) * n_ + b];
    }
    int inter_hops(QpuId a, QpuId b) const {
        return hops_[static_cast<std::size_t>(a) * n_ + b];
    }
    /// QPU sequence from a to b along the fixed route, both ends included.
    std::vector<QpuId> inter_path(QpuId a, QpuId b) const;

private:
    int n_ = 0;
    std::vector<int> capacity_;
    std::vector<std::vector<int>> intra_;
    std::vector<double> inter_;
    std::vector<int> hops_;
    std::vector<int> next_;
};

/// Validated heterogeneous cluster. Immutable after construction.
class ClusterTopology {
public:
    /// Throws ValidationError on bad capacities, dangling or self-loop edges,
    /// non-positive cost factors, duplicate links, or a disconnected coupling
    /// or link graph.
    ClusterTopology(std::vector<Qpu> qpus, std::vector<Link> links);

    int size() const {
        return static_cast<int>(qpus_.size());
    }
    const Qpu &qpu(QpuId p) const {
        return qpus_[p];
    }
    const std::vector<Qpu> &qpus() const {
        return qpus_;
    }
    const std::vector<Link> &links() const {
        return links_;
    }
    const DistanceTables &distances() const {
        return distances_;
    }
    int total_capacity() const;
    /// Index into links() of the link joining a and b, or -1.
    int link_index(QpuId a, QpuId b) const;
    const std::vector<QpuId> &neighbors(QpuId p) const {
        return link_adj_[p];
    }
    /// Physical qubits adjacent to `phys` on QPU p.
    const std::vector<int> &coupled(QpuId p, int phys) const {
        return coupling_adj_[p][phys];
    }

private:
    std::vector<Qpu> qpus_;
    std::vector<Link> links_;
    std::vector<std::vector<QpuId>> link_adj_;
    std::vector<std::vector<std::vector<int>>> coupling_adj_;
    DistanceTables distances_;
};

/// Reads the cluster JSON format:
///   {"qpus": [{"name", "comp_capacity", "coupling": [[i, j], ...], "comm_qubits"}, ...],
///    "links": [{"a", "b", "cost_factor"}, ...]}
/// Link endpoints are QPU positions (0-based integers) or QPU names. Unknown
/// or missing fields are a ValidationError.
ClusterTopology load_cluster(std::string_view json_text);

/// Writes the format load_cluster reads; link endpoints as positions.
std::string serialize_cluster(const ClusterTopology &cluster);

enum class TopologyKind { Line, Ring, Grid, HeavyHexLike };

TopologyKind parse_topology_kind(std::string_view s);

/// Coupling maps for one QPU of n qubits.
std::vector<std::pair<int, int>> line_coupling(int n);
std::vector<std::pair<int, int>> ring_coupling(int n);
std::vector<std::pair<int, int>> grid_coupling(int n);
std::vector<std::pair<int, int>> heavy_hex_like_coupling(int n);

/// Random heterogeneous cluster. `kind` shapes the QPU link graph; each QPU
/// gets sizes[i] computational qubits and a coupling family drawn from the
/// seed, and every link a cost factor in {1, 1.25, 1.5, 1.75, 2}.
ClusterTopology gen_topology(TopologyKind kind, std::span<const int> sizes, std::uint64_t seed);

/// EPR-pair accounting. Every remote gate and every teleport consumes one
/// pair per link hop along its route.
class QuantumSwitch {
public:
    explicit QuantumSwitch(const ClusterTopology &cluster);

    /// `path` is the QPU sequence the operation is routed along. Consecutive
    /// entries must be joined by a link.
    void record_remote_op(std::span<const QpuId> path);
    void record_teleport(std::span<const QpuId> path);

    long epr_consumed() const {
        return epr_consumed_;
    }
    long per_link(int link) const {
        return per_link_[link];
    }
    long remote_ops() const {
        return remote_ops_;
    }
    long teleports() const {
        return teleports_;
    }

private:
    void consume(std::span<const QpuId> path);

    const ClusterTopology *cluster_;
    long epr_consumed_ = 0;
    long remote_ops_ = 0;
    long teleports_ = 0;
    std::vector<long> per_link_;
};

}  // namespace dqcmap
