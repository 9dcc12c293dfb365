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

#include "dqcmap/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "dqcmap/errors.hpp"
#include "dqcmap/rng.hpp"
#include "json.hpp"

namespace dqcmap {

namespace {

using Json = nlohmann::json;

bool connected(int n, const std::vector<std::vector<int>> &adj) {
    if (n == 0) {
        return true;
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == n;
}

std::vector<std::vector<int>> coupling_adjacency(const Qpu &qpu) {
    std::vector<std::vector<int>> adj(qpu.comp_capacity);
    for (auto [i, j] : qpu.coupling) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto &row : adj) {
        std::sort(row.begin(), row.end());
    }
    return adj;
}

}  // namespace

DistanceTables::DistanceTables(const std::vector<Qpu> &qpus, const std::vector<Link> &links)
    : n_(static_cast<int>(qpus.size())) {
    for (const auto &qpu : qpus) {
        const int cap = qpu.comp_capacity;
        capacity_.push_back(cap);
        auto adj = coupling_adjacency(qpu);
        std::vector<int> table(static_cast<std::size_t>(cap) * cap, -1);
        for (int src = 0; src < cap; ++src) {
            std::queue<int> frontier;
            table[static_cast<std::size_t>(src) * cap + src] = 0;
            frontier.push(src);
            while (!frontier.empty()) {
                int v = frontier.front();
                frontier.pop();
                for (int u : adj[v]) {
                    auto &d = table[static_cast<std::size_t>(src) * cap + u];
                    if (d < 0) {
                        d = table[static_cast<std::size_t>(src) * cap + v] + 1;
                        frontier.push(u);
                    }
                }
            }
        }
        intra_.push_back(std::move(table));
    }

    // Floyd-Warshall with successor tracking; strict improvement keeps the
    // route choice deterministic.
    const double inf = std::numeric_limits<double>::infinity();
    const auto n = static_cast<std::size_t>(n_);
    inter_.assign(n * n, inf);
    next_.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        inter_[i * n + i] = 0.0;
        next_[i * n + i] = static_cast<int>(i);
    }
    for (const auto &link : links) {
        const auto a = static_cast<std::size_t>(link.a);
        const auto b = static_cast<std::size_t>(link.b);
        if (link.cost_factor < inter_[a * n + b]) {
            inter_[a * n + b] = inter_[b * n + a] = link.cost_factor;
            next_[a * n + b] = link.b;
            next_[b * n + a] = link.a;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double via = inter_[i * n + k] + inter_[k * n + j];
                if (via < inter_[i * n + j]) {
                    inter_[i * n + j] = via;
                    next_[i * n + j] = next_[i * n + k];
                }
            }
        }
    }
    hops_.assign(n * n, 0);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
            hops_[static_cast<std::size_t>(a) * n + b] = static_cast<int>(inter_path(a, b).size()) - 1;
        }
    }
}

std::vector<QpuId> DistanceTables::inter_path(QpuId a, QpuId b) const {
    const auto n = static_cast<std::size_t>(n_);
    std::vector<QpuId> path{a};
    while (a != b) {
        a = next_[static_cast<std::size_t>(a) * n + b];
        if (a < 0) {
            return {};
        }
        path.push_back(a);
    }
    return path;
}

ClusterTopology::ClusterTopology(std::vector<Qpu> qpus, std::vector<Link> links)
    : qpus_(std::move(qpus)), links_(std::move(links)) {
    if (qpus_.empty()) {
        throw ValidationError("cluster has no QPUs");
    }
    std::set<std::string> names;
    for (auto &qpu : qpus_) {
        if (!names.insert(qpu.name).second) {
            throw ValidationError("duplicate QPU name '" + qpu.name + "'");
        }
        if (qpu.comp_capacity < 1) {
            throw ValidationError("QPU '" + qpu.name + "' must have comp_capacity >= 1");
        }
        if (qpu.comm_qubits < 1) {
            throw ValidationError("QPU '" + qpu.name + "' must have comm_qubits >= 1");
        }
        std::set<std::pair<int, int>> edges;
        for (auto [i, j] : qpu.coupling) {
            if (i < 0 || j < 0 || i >= qpu.comp_capacity || j >= qpu.comp_capacity || i == j) {
                throw ValidationError("QPU '" + qpu.name + "' has invalid coupling edge [" + std::to_string(i) +
                                      ", " + std::to_string(j) + "]");
            }
            edges.insert(std::minmax(i, j));
        }
        qpu.coupling.assign(edges.begin(), edges.end());
        auto adj = coupling_adjacency(qpu);
        if (!connected(qpu.comp_capacity, adj)) {
            throw ValidationError("QPU '" + qpu.name + "' has a disconnected coupling graph");
        }
        coupling_adj_.push_back(std::move(adj));
    }

    link_adj_.resize(qpus_.size());
    std::set<std::pair<int, int>> seen;
    for (const auto &link : links_) {
        if (link.a < 0 || link.b < 0 || link.a >= size() || link.b >= size() || link.a == link.b) {
            throw ValidationError("link references invalid QPUs (" + std::to_string(link.a) + ", " +
                                  std::to_string(link.b) + ")");
        }
        if (!(link.cost_factor > 0.0) || !std::isfinite(link.cost_factor)) {
            throw ValidationError("link cost_factor must be positive and finite");
        }
        if (!seen.insert(std::minmax(link.a, link.b)).second) {
            throw ValidationError("duplicate link between QPUs " + std::to_string(link.a) + " and " +
                                  std::to_string(link.b));
        }
        link_adj_[link.a].push_back(link.b);
        link_adj_[link.b].push_back(link.a);
    }
    for (auto &row : link_adj_) {
        std::sort(row.begin(), row.end());
    }
    if (!connected(size(), link_adj_)) {
        throw ValidationError("QPU link graph is disconnected");
    }
    distances_ = DistanceTables(qpus_, links_);
}

int ClusterTopology::total_capacity() const {
    int total = 0;
    for (const auto &qpu : qpus_) {
        total += qpu.comp_capacity;
    }
    return total;
}

int ClusterTopology::link_index(QpuId a, QpuId b) const {
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const auto &l = links_[i];
        if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

namespace {

void require_exact_keys(const Json &obj, std::initializer_list<const char *> keys, const std::string &where) {
    if (!obj.is_object()) {
        throw ValidationError(where + " must be a JSON object");
    }
    for (const char *k : keys) {
        if (!obj.contains(k)) {
            throw ValidationError(where + " is missing field '" + k + "'");
        }
    }
    for (const auto &[k, v] : obj.items()) {
        if (std::find_if(keys.begin(), keys.end(), [&](const char *x) { return k == x; }) == keys.end()) {
            throw ValidationError(where + " has unknown field '" + k + "'");
        }
    }
}

int as_int(const Json &v, const std::string &what) {
    if (!v.is_number_integer()) {
        throw ValidationError(what + " must be an integer");
    }
    return v.get<int>();
}

}  // namespace

ClusterTopology load_cluster(std::string_view json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error &e) {
        throw ValidationError(std::string("cluster config is not valid JSON: ") + e.what());
    }
    require_exact_keys(root, {"qpus", "links"}, "cluster config");
    if (!root["qpus"].is_array() || !root["links"].is_array()) {
        throw ValidationError("'qpus' and 'links' must be arrays");
    }

    std::vector<Qpu> qpus;
    for (const auto &q : root["qpus"]) {
        const std::string where = "qpus[" + std::to_string(qpus.size()) + "]";
        require_exact_keys(q, {"name", "comp_capacity", "coupling", "comm_qubits"}, where);
        if (!q["name"].is_string()) {
            throw ValidationError(where + ".name must be a string");
        }
        Qpu qpu;
        qpu.name = q["name"].get<std::string>();
        qpu.comp_capacity = as_int(q["comp_capacity"], where + ".comp_capacity");
        qpu.comm_qubits = as_int(q["comm_qubits"], where + ".comm_qubits");
        if (!q["coupling"].is_array()) {
            throw ValidationError(where + ".coupling must be an array");
        }
        for (const auto &e : q["coupling"]) {
            if (!e.is_array() || e.size() != 2) {
                throw ValidationError(where + ".coupling entries must be [i, j] pairs");
            }
            qpu.coupling.emplace_back(as_int(e[0], where + ".coupling"), as_int(e[1], where + ".coupling"));
        }
        qpus.push_back(std::move(qpu));
    }

    auto endpoint = [&](const Json &v, const std::string &where) -> QpuId {
        if (v.is_string()) {
            for (std::size_t i = 0; i < qpus.size(); ++i) {
                if (qpus[i].name == v.get<std::string>()) {
                    return static_cast<QpuId>(i);
                }
            }
            throw ValidationError(where + " names unknown QPU '" + v.get<std::string>() + "'");
        }
        return as_int(v, where);
    };

    std::vector<Link> links;
    for (const auto &l : root["links"]) {
        const std::string where = "links[" + std::to_string(links.size()) + "]";
        require_exact_keys(l, {"a", "b", "cost_factor"}, where);
        if (!l["cost_factor"].is_number()) {
            throw ValidationError(where + ".cost_factor must be a number");
        }
        links.push_back({endpoint(l["a"], where + ".a"), endpoint(l["b"], where + ".b"),
                         l["cost_factor"].get<double>()});
    }
    return ClusterTopology(std::move(qpus), std::move(links));
}

std::string serialize_cluster(const ClusterTopology &cluster) {
    nlohmann::ordered_json root;
    root["qpus"] = nlohmann::ordered_json::array();
    for (const auto &qpu : cluster.qpus()) {
        nlohmann::ordered_json q;
        q["name"] = qpu.name;
        q["comp_capacity"] = qpu.comp_capacity;
        q["coupling"] = nlohmann::ordered_json::array();
        for (auto [i, j] : qpu.coupling) {
            q["coupling"].push_back({i, j});
        }
        q["comm_qubits"] = qpu.comm_qubits;
        root["qpus"].push_back(std::move(q));
    }
    root["links"] = nlohmann::ordered_json::array();
    for (const auto &link : cluster.links()) {
        nlohmann::ordered_json l;
        l["a"] = link.a;
        l["b"] = link.b;
        l["cost_factor"] = link.cost_factor;
        root["links"].push_back(std::move(l));
    }
    return root.dump(2) + "\n";
}

TopologyKind parse_topology_kind(std::string_view s) {
    if (s == "line") return TopologyKind::Line;
    if (s == "ring") return TopologyKind::Ring;
    if (s == "grid") return TopologyKind::Grid;
    if (s == "heavy_hex_like") return TopologyKind::HeavyHexLike;
    throw ParameterError("unknown topology kind '" + std::string(s) + "'");
}

std::vector<std::pair<int, int>> line_coupling(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return edges;
}

std::vector<std::pair<int, int>> ring_coupling(int n) {
    auto edges = line_coupling(n);
    if (n >= 3) {
        edges.emplace_back(0, n - 1);
    }
    return edges;
}

std::vector<std::pair<int, int>> grid_coupling(int n) {
    const int width = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        if ((i % width) + 1 < width && i + 1 < n) {
            edges.emplace_back(i, i + 1);
        }
        if (i + width < n) {
            edges.emplace_back(i, i + width);
        }
    }
    return edges;
}

// Rows of line segments joined by sparse vertical rungs at alternating column
// offsets, giving mostly degree-2/3 qubits in the spirit of heavy-hex devices.
std::vector<std::pair<int, int>> heavy_hex_like_coupling(int n) {
    const int width = std::max(3, static_cast<int>(std::ceil(std::sqrt(2.0 * n))));
    std::vector<std::pair<int, int>> edges;
    const int rows = (n + width - 1) / width;
    for (int r = 0; r < rows; ++r) {
        const int begin = r * width;
        const int end = std::min(n, begin + width);
        for (int i = begin; i + 1 < end; ++i) {
            edges.emplace_back(i, i + 1);
        }
        if (r + 1 < rows) {
            const int next_len = std::min(n, begin + 2 * width) - (begin + width);
            bool joined = false;
            for (int c = (r % 2 == 0) ? 0 : 2; c < next_len; c += 4) {
                edges.emplace_back(begin + c, begin + width + c);
                joined = true;
            }
            if (!joined) {
                edges.emplace_back(begin, begin + width);
            }
        }
    }
    return edges;
}

ClusterTopology gen_topology(TopologyKind kind, std::span<const int> sizes, std::uint64_t seed) {
    if (sizes.empty()) {
        throw ParameterError("gen_topology needs at least one QPU size");
    }
    for (int s : sizes) {
        if (s < 2) {
            throw ParameterError("every QPU size must be at least 2");
        }
    }
    Rng rng(derive_seed(seed, "topology"));
    const int n = static_cast<int>(sizes.size());

    std::vector<Qpu> qpus;
    for (int i = 0; i < n; ++i) {
        Qpu qpu;
        qpu.name = "qpu" + std::to_string(i);
        qpu.comp_capacity = sizes[i];
        switch (rng.below(4)) {
        case 0:
            qpu.coupling = line_coupling(sizes[i]);
            break;
        case 1:
            qpu.coupling = ring_coupling(sizes[i]);
            break;
        case 2:
            qpu.coupling = grid_coupling(sizes[i]);
            break;
        default:
            qpu.coupling = heavy_hex_like_coupling(sizes[i]);
            break;
        }
        qpu.comm_qubits = 1 + static_cast<int>(rng.below(4));
        qpus.push_back(std::move(qpu));
    }

    std::vector<std::pair<int, int>> shape;
    switch (kind) {
    case TopologyKind::Line:
        shape = line_coupling(n);
        break;
    case TopologyKind::Ring:
        shape = ring_coupling(n);
        break;
    case TopologyKind::Grid:
        shape = grid_coupling(n);
        break;
    case TopologyKind::HeavyHexLike:
        shape = ring_coupling(n);
        if (n >= 6) {
            for (int i = 0; i < n / 2; i += 2) {
                shape.emplace_back(i, i + n / 2);
            }
        }
        break;
    }
    std::vector<Link> links;
    for (auto [a, b] : shape) {
        links.push_back({a, b, 1.0 + 0.25 * static_cast<double>(rng.below(5))});
    }
    return ClusterTopology(std::move(qpus), std::move(links));
}

QuantumSwitch::QuantumSwitch(const ClusterTopology &cluster)
    : cluster_(&cluster), per_link_(cluster.links().size(), 0) {
}

void QuantumSwitch::consume(std::span<const QpuId> path) {
    if (path.empty()) {
        throw ParameterError("EPR route must name at least one QPU");
    }
    std::vector<int> hops;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        int link = cluster_->link_index(path[i], path[i + 1]);
        if (link < 0) {
            throw ValidationError("no link between QPUs " + std::to_string(path[i]) + " and " +
                                  std::to_string(path[i + 1]));
        }
        hops.push_back(link);
    }
    for (int link : hops) {
        ++per_link_[link];
        ++epr_consumed_;
    }
}

void QuantumSwitch::record_remote_op(std::span<const QpuId> path) {
    consume(path);
    ++remote_ops_;
}

void QuantumSwitch::record_teleport(std::span<const QpuId> path) {
    consume(path);
    ++teleports_;
}

}  // namespace dqcmap
