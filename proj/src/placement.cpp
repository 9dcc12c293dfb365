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

#include "dqcmap/placement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dqcmap/errors.hpp"
#include "dqcmap/rng.hpp"

namespace dqcmap {

InteractionGraph::InteractionGraph(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1) {
        throw ParameterError("interaction graph needs at least one vertex");
    }
}

void InteractionGraph::add(Qubit a, Qubit b, double w) {
    if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_) {
        throw ParameterError("invalid interaction graph edge");
    }
    if (w > 0.0) {
        edges_[QubitPair::of(a, b)] += w;
    }
}

double InteractionGraph::weight(Qubit a, Qubit b) const {
    auto it = edges_.find(QubitPair::of(a, b));
    return it == edges_.end() ? 0.0 : it->second;
}

std::vector<std::vector<std::pair<Qubit, double>>> InteractionGraph::adjacency() const {
    std::vector<std::vector<std::pair<Qubit, double>>> adj(n_);
    for (const auto &[pair, w] : edges_) {
        adj[pair.lo].emplace_back(pair.hi, w);
        adj[pair.hi].emplace_back(pair.lo, w);
    }
    return adj;
}

std::vector<int> Assignment::loads(int n_qpus) const {
    std::vector<int> load(n_qpus, 0);
    for (QpuId p : qpu_of) {
        if (p >= 0 && p < n_qpus) {
            ++load[p];
        }
    }
    return load;
}

bool is_feasible(const Assignment &a, const ClusterTopology &cluster) {
    for (QpuId p : a.qpu_of) {
        if (p < 0 || p >= cluster.size()) {
            return false;
        }
    }
    auto load = a.loads(cluster.size());
    for (QpuId p = 0; p < cluster.size(); ++p) {
        if (load[p] > cluster.qpu(p).comp_capacity) {
            return false;
        }
    }
    return true;
}

void check_capacity(int n_qubits, const ClusterTopology &cluster) {
    if (cluster.total_capacity() < n_qubits) {
        throw InfeasibleError("circuit needs " + std::to_string(n_qubits) + " qubits but the cluster holds " +
                              std::to_string(cluster.total_capacity()));
    }
}

InteractionGraph build_graph(const std::vector<Segment> &segments, double lambda, int n_qubits) {
    if (lambda < 0.0) {
        throw ParameterError("decay lambda must be non-negative");
    }
    InteractionGraph g(n_qubits);
    for (const auto &seg : segments) {
        const double alpha = std::exp(-lambda * seg.index);
        for (const auto &[pair, count] : seg.interactions.pairs) {
            g.add(pair.lo, pair.hi, alpha * static_cast<double>(count));
        }
    }
    return g;
}

double default_lambda(int n_segments) {
    if (n_segments < 1) {
        throw ParameterError("segment count must be positive");
    }
    return 3.0 / n_segments;
}

double edge_cut(const InteractionGraph &g, const Assignment &a) {
    if (a.n_qubits() != g.n_qubits()) {
        throw ValidationError("assignment does not cover the interaction graph");
    }
    for (QpuId p : a.qpu_of) {
        if (p < 0) {
            throw ValidationError("assignment leaves a qubit unassigned");
        }
    }
    double cut = 0.0;
    for (const auto &[pair, w] : g.edges()) {
        if (a.qpu_of[pair.lo] != a.qpu_of[pair.hi]) {
            cut += w;
        }
    }
    return cut;
}

std::vector<QpuId> largest_qpus(const ClusterTopology &cluster, int count) {
    if (count < 1 || count > cluster.size()) {
        throw ParameterError("partition count must be in 1.." + std::to_string(cluster.size()));
    }
    std::vector<QpuId> order(cluster.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](QpuId a, QpuId b) {
        return cluster.qpu(a).comp_capacity > cluster.qpu(b).comp_capacity;
    });
    order.resize(count);
    return order;
}

Assignment cluster_graph(const InteractionGraph &g, const ClusterTopology &cluster, int partitions) {
    const int n = g.n_qubits();
    const std::vector<QpuId> chosen = largest_qpus(cluster, partitions);
    int chosen_capacity = 0;
    for (QpuId p : chosen) {
        chosen_capacity += cluster.qpu(p).comp_capacity;
    }
    if (chosen_capacity < n) {
        throw InfeasibleError("the " + std::to_string(partitions) + " largest QPUs hold " +
                              std::to_string(chosen_capacity) + " qubits, circuit needs " + std::to_string(n));
    }
    const int max_cap = cluster.qpu(chosen.front()).comp_capacity;

    // Group g is identified by its smallest member; weight[g][h] is the total
    // edge weight between groups.
    std::vector<std::vector<Qubit>> members(n);
    std::vector<std::vector<double>> weight(n, std::vector<double>(n, 0.0));
    for (Qubit q = 0; q < n; ++q) {
        members[q] = {q};
    }
    for (const auto &[pair, w] : g.edges()) {
        weight[pair.lo][pair.hi] += w;
        weight[pair.hi][pair.lo] += w;
    }
    std::vector<int> active(n);
    std::iota(active.begin(), active.end(), 0);

    while (static_cast<int>(active.size()) > partitions) {
        int best_a = -1, best_b = -1;
        double best_w = -1.0;
        std::size_t best_size = 0;
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const int a = active[i], b = active[j];
                const std::size_t size = members[a].size() + members[b].size();
                if (static_cast<int>(size) > max_cap) {
                    continue;
                }
                const double w = weight[a][b];
                if (w > best_w || (w == best_w && size < best_size)) {
                    best_a = a;
                    best_b = b;
                    best_w = w;
                    best_size = size;
                }
            }
        }
        if (best_a < 0) {
            // Nothing fits: merge the two smallest groups and leave the
            // overflow to repair_capacity.
            std::vector<int> order = active;
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return members[a].size() < members[b].size(); });
            best_a = std::min(order[0], order[1]);
            best_b = std::max(order[0], order[1]);
        }
        members[best_a].insert(members[best_a].end(), members[best_b].begin(), members[best_b].end());
        members[best_b].clear();
        for (int c : active) {
            weight[best_a][c] += weight[best_b][c];
            weight[c][best_a] = weight[best_a][c];
        }
        weight[best_a][best_a] = 0.0;
        active.erase(std::find(active.begin(), active.end(), best_b));
    }

    std::stable_sort(active.begin(), active.end(),
                     [&](int a, int b) { return members[a].size() > members[b].size(); });
    Assignment a;
    a.qpu_of.assign(n, -1);
    for (std::size_t i = 0; i < active.size(); ++i) {
        for (Qubit q : members[active[i]]) {
            a.qpu_of[q] = chosen[i];
        }
    }
    return repair_capacity(std::move(a), g, cluster);
}

Assignment repair_capacity(Assignment a, const InteractionGraph &g, const ClusterTopology &cluster) {
    const int n = g.n_qubits();
    if (a.n_qubits() != n) {
        throw ValidationError("assignment does not cover the interaction graph");
    }
    for (QpuId p : a.qpu_of) {
        if (p < 0 || p >= cluster.size()) {
            throw ValidationError("assignment leaves a qubit unassigned");
        }
    }
    check_capacity(n, cluster);

    const auto adj = g.adjacency();
    auto weight_to = [&](Qubit q, QpuId p) {
        double w = 0.0;
        for (auto [j, wj] : adj[q]) {
            if (j != q && a.qpu_of[j] == p) {
                w += wj;
            }
        }
        return w;
    };
    std::vector<int> load = a.loads(cluster.size());

    for (QpuId p = 0; p < cluster.size(); ++p) {
        while (load[p] > cluster.qpu(p).comp_capacity) {
            Qubit weakest = -1;
            double weakest_w = 0.0;
            for (Qubit q = 0; q < n; ++q) {
                if (a.qpu_of[q] != p) {
                    continue;
                }
                double w = weight_to(q, p);
                if (weakest < 0 || w < weakest_w) {
                    weakest = q;
                    weakest_w = w;
                }
            }

            // Breadth-first over the link graph; the first ring with any room
            // supplies the destination.
            std::vector<int> hop(cluster.size(), -1);
            std::vector<QpuId> ring{p};
            hop[p] = 0;
            QpuId dest = -1;
            while (dest < 0 && !ring.empty()) {
                std::vector<QpuId> next;
                for (QpuId r : ring) {
                    for (QpuId nb : cluster.neighbors(r)) {
                        if (hop[nb] < 0) {
                            hop[nb] = hop[r] + 1;
                            next.push_back(nb);
                        }
                    }
                }
                std::sort(next.begin(), next.end());
                double best_increase = 0.0;
                for (QpuId c : next) {
                    if (load[c] >= cluster.qpu(c).comp_capacity) {
                        continue;
                    }
                    double increase = weakest_w - weight_to(weakest, c);
                    if (dest < 0 || increase < best_increase) {
                        dest = c;
                        best_increase = increase;
                    }
                }
                ring = std::move(next);
            }
            if (dest < 0) {
                throw InfeasibleError("no QPU with spare capacity reachable from QPU " + std::to_string(p));
            }
            a.qpu_of[weakest] = dest;
            --load[p];
            ++load[dest];
        }
    }
    return a;
}

Assignment random_placement(int n_qubits, const ClusterTopology &cluster, std::uint64_t seed) {
    check_capacity(n_qubits, cluster);
    std::vector<QpuId> slots;
    for (QpuId p = 0; p < cluster.size(); ++p) {
        slots.insert(slots.end(), cluster.qpu(p).comp_capacity, p);
    }
    Rng rng(seed);
    rng.shuffle(slots);
    Assignment a;
    a.qpu_of.assign(slots.begin(), slots.begin() + n_qubits);
    return a;
}

}  // namespace dqcmap
