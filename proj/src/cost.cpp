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

#include "dqcmap/cost.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "dqcmap/errors.hpp"

namespace dqcmap {

CostParams CostParams::with_ratio(double ratio) {
    if (!(ratio > 0.0)) {
        throw ParameterError("inter:intra ratio must be positive");
    }
    CostParams cp;
    cp.remote_op_cost = ratio * cp.cx_cost;
    cp.teleport_cost = ratio * cp.cx_cost;
    return cp;
}

void validate(const CostParams &cp) {
    for (double v : {cp.gamma1, cp.gamma2, cp.gamma3, cp.swap_cost, cp.remote_op_cost, cp.teleport_cost}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ParameterError("cost parameters must be finite and non-negative");
        }
    }
    if (!(cp.cx_cost > 0.0) || !std::isfinite(cp.cx_cost)) {
        throw ParameterError("cx_cost must be positive");
    }
}

int IntraLayout::physical_of(Qubit q) const {
    auto it = std::lower_bound(physical.begin(), physical.end(), std::make_pair(q, -1));
    if (it == physical.end() || it->first != q) {
        throw RangeError("qubit " + std::to_string(q) + " is not placed on QPU " + std::to_string(qpu));
    }
    return it->second;
}

namespace {

template <typename WeightFn>
IntraLayout greedy_layout(const ClusterTopology &cluster, QpuId p, std::vector<Qubit> qubits, WeightFn weight) {
    const int cap = cluster.qpu(p).comp_capacity;
    if (static_cast<int>(qubits.size()) > cap) {
        throw InfeasibleError("QPU " + std::to_string(p) + " holds " + std::to_string(cap) + " qubits, asked for " +
                              std::to_string(qubits.size()));
    }
    std::sort(qubits.begin(), qubits.end());
    const std::size_t m = qubits.size();
    std::vector<double> inside(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i != j) {
                inside[i] += weight(qubits[i], qubits[j]);
            }
        }
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return inside[a] > inside[b]; });

    const DistanceTables &dist = cluster.distances();
    std::vector<char> used(cap, 0);
    std::vector<std::pair<Qubit, int>> placed;
    for (std::size_t idx : order) {
        const Qubit q = qubits[idx];
        int best = -1;
        if (placed.empty()) {
            std::size_t best_degree = 0;
            for (int x = 0; x < cap; ++x) {
                if (best < 0 || cluster.coupled(p, x).size() > best_degree) {
                    best = x;
                    best_degree = cluster.coupled(p, x).size();
                }
            }
        } else {
            double best_cost = 0.0;
            for (int x = 0; x < cap; ++x) {
                if (used[x]) {
                    continue;
                }
                double cost = 0.0;
                for (auto [j, y] : placed) {
                    double w = weight(q, j);
                    if (w != 0.0) {
                        cost += w * dist.intra(p, x, y);
                    }
                }
                if (best < 0 || cost < best_cost) {
                    best = x;
                    best_cost = cost;
                }
            }
        }
        used[best] = 1;
        placed.emplace_back(q, best);
    }
    std::sort(placed.begin(), placed.end());
    return IntraLayout{p, std::move(placed)};
}

double pair_local_cost(const CostParams &cp, int distance) {
    return cp.cx_cost + cp.swap_cost * std::max(0, distance - 1);
}

std::vector<std::vector<Qubit>> members_by_qpu(const Assignment &a, const ClusterTopology &cluster) {
    std::vector<std::vector<Qubit>> members(cluster.size());
    for (Qubit q = 0; q < a.n_qubits(); ++q) {
        const QpuId p = a.qpu_of[q];
        if (p < 0 || p >= cluster.size()) {
            throw ValidationError("qubit " + std::to_string(q) + " has no valid QPU");
        }
        members[p].push_back(q);
    }
    return members;
}

}  // namespace

IntraLayout intra_layout(const ClusterTopology &cluster, QpuId p, std::span<const Qubit> qubits,
                         const InteractionCount &interactions) {
    return greedy_layout(cluster, p, std::vector<Qubit>(qubits.begin(), qubits.end()),
                         [&](Qubit a, Qubit b) { return static_cast<double>(interactions.get(a, b)); });
}

double e_local(const Assignment &a, const Segment &seg, const ClusterTopology &cluster, const CostParams &cp) {
    const auto members = members_by_qpu(a, cluster);
    std::vector<IntraLayout> layouts;
    for (QpuId p = 0; p < cluster.size(); ++p) {
        layouts.push_back(intra_layout(cluster, p, members[p], seg.interactions));
    }
    double sum = 0.0;
    for (const auto &[pair, f] : seg.interactions.pairs) {
        const QpuId p = a.qpu_of[pair.lo];
        if (p != a.qpu_of[pair.hi]) {
            continue;
        }
        const int d = cluster.distances().intra(p, layouts[p].physical_of(pair.lo), layouts[p].physical_of(pair.hi));
        sum += static_cast<double>(f) * pair_local_cost(cp, d);
    }
    return sum;
}

double e_inter(const Assignment &a, const Segment &seg, const ClusterTopology &cluster, const CostParams &cp) {
    members_by_qpu(a, cluster);
    double sum = 0.0;
    for (const auto &[pair, f] : seg.interactions.pairs) {
        const QpuId pa = a.qpu_of[pair.lo];
        const QpuId pb = a.qpu_of[pair.hi];
        if (pa != pb) {
            sum += static_cast<double>(f) * cp.remote_op_cost * cluster.distances().inter(pa, pb);
        }
    }
    return sum;
}

double e_move(const Assignment &prev, const Assignment &cur, const ClusterTopology &cluster, const CostParams &cp) {
    if (prev.n_qubits() != cur.n_qubits()) {
        throw ValidationError("assignments cover different qubit sets");
    }
    double sum = 0.0;
    for (Qubit q = 0; q < cur.n_qubits(); ++q) {
        if (prev.qpu_of[q] != cur.qpu_of[q]) {
            sum += cp.teleport_cost * cluster.distances().inter(prev.qpu_of[q], cur.qpu_of[q]);
        }
    }
    return sum;
}

CostBreakdown total(const Assignment &a, const Segment &seg, const Assignment *prev, const ClusterTopology &cluster,
                    const CostParams &cp) {
    CostBreakdown b;
    b.e_inter = e_inter(a, seg, cluster, cp);
    b.e_local = e_local(a, seg, cluster, cp);
    b.e_move = prev ? e_move(*prev, a, cluster, cp) : 0.0;
    b.e_total = cp.gamma1 * b.e_inter + cp.gamma2 * b.e_local + cp.gamma3 * b.e_move;
    const DistanceTables &dist = cluster.distances();
    for (const auto &[pair, f] : seg.interactions.pairs) {
        b.epr_pairs += f * dist.inter_hops(a.qpu_of[pair.lo], a.qpu_of[pair.hi]);
    }
    if (prev) {
        for (Qubit q = 0; q < a.n_qubits(); ++q) {
            b.epr_pairs += dist.inter_hops(prev->qpu_of[q], a.qpu_of[q]);
        }
    }
    return b;
}

SegmentCostModel::SegmentCostModel(const ClusterTopology &cluster, const Segment &seg, const CostParams &cp,
                                   int n_qubits)
    : cluster_(&cluster), seg_(&seg), cp_(cp), n_(n_qubits),
      counts_(static_cast<std::size_t>(n_qubits) * n_qubits, 0.0), neighbors_(n_qubits) {
    validate(cp);
    for (const auto &[pair, f] : seg.interactions.pairs) {
        if (pair.hi >= n_qubits) {
            throw ValidationError("segment references qubit outside the circuit");
        }
        counts_[static_cast<std::size_t>(pair.lo) * n_ + pair.hi] = static_cast<double>(f);
        counts_[static_cast<std::size_t>(pair.hi) * n_ + pair.lo] = static_cast<double>(f);
        neighbors_[pair.lo].emplace_back(pair.hi, static_cast<double>(f));
        neighbors_[pair.hi].emplace_back(pair.lo, static_cast<double>(f));
    }
}

IntraLayout SegmentCostModel::layout(QpuId p, const std::vector<Qubit> &members) const {
    return greedy_layout(*cluster_, p, members, [&](Qubit a, Qubit b) { return count(a, b); });
}

double SegmentCostModel::local_cost(QpuId p, const std::vector<Qubit> &members) const {
    if (members.size() < 2) {
        return 0.0;
    }
    std::string key(sizeof(QpuId) + members.size() * sizeof(Qubit), '\0');
    std::memcpy(key.data(), &p, sizeof(QpuId));
    std::memcpy(key.data() + sizeof(QpuId), members.data(), members.size() * sizeof(Qubit));
    if (auto it = cache_.find(key); it != cache_.end()) {
        return it->second;
    }
    const IntraLayout lay = layout(p, members);
    double sum = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const double f = count(members[i], members[j]);
            if (f != 0.0) {
                const int d = cluster_->distances().intra(p, lay.physical[i].second, lay.physical[j].second);
                sum += f * pair_local_cost(cp_, d);
            }
        }
    }
    if (cache_.size() > 1'000'000) {
        cache_.clear();
    }
    cache_.emplace(std::move(key), sum);
    return sum;
}

AnnealState::AnnealState(const SegmentCostModel &model, Assignment init, const Assignment *prev)
    : model_(&model), assignment_(std::move(init)), prev_(prev) {
    const ClusterTopology &cluster = model.cluster();
    if (assignment_.n_qubits() != model.n_qubits()) {
        throw ValidationError("assignment does not match the circuit width");
    }
    if (prev_ && prev_->n_qubits() != model.n_qubits()) {
        throw ValidationError("previous assignment does not match the circuit width");
    }
    if (!is_feasible(assignment_, cluster)) {
        throw ValidationError("initial assignment violates QPU capacity");
    }
    members_ = members_by_qpu(assignment_, cluster);
    loads_ = assignment_.loads(cluster.size());
    local_.assign(cluster.size(), 0.0);
    for (QpuId p = 0; p < cluster.size(); ++p) {
        local_[p] = model.local_cost(p, members_[p]);
        local_sum_ += local_[p];
    }
    const CostParams &cp = model.params();
    const DistanceTables &dist = cluster.distances();
    for (Qubit q = 0; q < model.n_qubits(); ++q) {
        for (auto [j, f] : model.neighbors(q)) {
            if (j > q) {
                inter_ += f * cp.remote_op_cost * dist.inter(assignment_.qpu_of[q], assignment_.qpu_of[j]);
            }
        }
        if (prev_) {
            move_ += cp.teleport_cost * dist.inter(prev_->qpu_of[q], assignment_.qpu_of[q]);
        }
    }
}

double AnnealState::e_total() const {
    const CostParams &cp = model_->params();
    return cp.gamma1 * inter_ + cp.gamma2 * local_sum_ + cp.gamma3 * move_;
}

CostBreakdown AnnealState::tracked() const {
    CostBreakdown b;
    b.e_inter = inter_;
    b.e_local = local_sum_;
    b.e_move = move_;
    b.e_total = e_total();
    return b;
}

namespace {

std::vector<Qubit> without(const std::vector<Qubit> &v, Qubit q) {
    std::vector<Qubit> out;
    out.reserve(v.size());
    for (Qubit x : v) {
        if (x != q) {
            out.push_back(x);
        }
    }
    return out;
}

std::vector<Qubit> with(const std::vector<Qubit> &v, Qubit q) {
    std::vector<Qubit> out;
    out.reserve(v.size() + 1);
    auto it = std::lower_bound(v.begin(), v.end(), q);
    out.insert(out.end(), v.begin(), it);
    out.push_back(q);
    out.insert(out.end(), it, v.end());
    return out;
}

}  // namespace

AnnealState::Terms AnnealState::terms(const Move &move) const {
    const ClusterTopology &cluster = model_->cluster();
    const DistanceTables &dist = cluster.distances();
    const CostParams &cp = model_->params();
    const auto &where = assignment_.qpu_of;
    const int n = model_->n_qubits();
    Terms t;

    // Inter and movement change for one qubit going from `from` to `to`;
    // `skip` is the swap partner, whose pair distance is unchanged.
    auto shift = [&](Qubit q, QpuId from, QpuId to, Qubit skip) {
        for (auto [j, f] : model_->neighbors(q)) {
            if (j == skip) {
                continue;
            }
            t.inter += f * cp.remote_op_cost * (dist.inter(to, where[j]) - dist.inter(from, where[j]));
        }
        if (prev_) {
            const QpuId origin = prev_->qpu_of[q];
            t.move += cp.teleport_cost * (dist.inter(origin, to) - dist.inter(origin, from));
        }
    };

    if (const auto *r = std::get_if<Relocate>(&move)) {
        if (r->qubit < 0 || r->qubit >= n || r->to < 0 || r->to >= cluster.size()) {
            throw ParameterError("relocate references an invalid qubit or QPU");
        }
        const QpuId from = where[r->qubit];
        if (from == r->to) {
            return t;
        }
        if (loads_[r->to] >= cluster.qpu(r->to).comp_capacity) {
            throw ParameterError("relocate target QPU " + std::to_string(r->to) + " is full");
        }
        shift(r->qubit, from, r->to, -1);
        t.p1 = from;
        t.local1 = model_->local_cost(from, without(members_[from], r->qubit));
        t.p2 = r->to;
        t.local2 = model_->local_cost(r->to, with(members_[r->to], r->qubit));
        t.local = t.local1 + t.local2 - local_[from] - local_[r->to];
        return t;
    }

    const auto &s = std::get<SwapQubits>(move);
    if (s.a < 0 || s.b < 0 || s.a >= n || s.b >= n) {
        throw ParameterError("swap references an invalid qubit");
    }
    const QpuId pa = where[s.a];
    const QpuId pb = where[s.b];
    if (pa == pb) {
        throw ParameterError("swap needs qubits on different QPUs");
    }
    shift(s.a, pa, pb, s.b);
    shift(s.b, pb, pa, s.a);
    t.p1 = pa;
    t.local1 = model_->local_cost(pa, with(without(members_[pa], s.a), s.b));
    t.p2 = pb;
    t.local2 = model_->local_cost(pb, with(without(members_[pb], s.b), s.a));
    t.local = t.local1 + t.local2 - local_[pa] - local_[pb];
    return t;
}

double AnnealState::weighted(const Terms &t) const {
    const CostParams &cp = model_->params();
    return cp.gamma1 * t.inter + cp.gamma2 * t.local + cp.gamma3 * t.move;
}

double AnnealState::delta(const Move &move) const {
    return weighted(terms(move));
}

void AnnealState::apply(const Move &move) {
    const Terms t = terms(move);
    if (t.p1 < 0) {
        return;
    }
    if (const auto *r = std::get_if<Relocate>(&move)) {
        const QpuId from = assignment_.qpu_of[r->qubit];
        members_[from] = without(members_[from], r->qubit);
        members_[r->to] = with(members_[r->to], r->qubit);
        --loads_[from];
        ++loads_[r->to];
        assignment_.qpu_of[r->qubit] = r->to;
    } else {
        const auto &s = std::get<SwapQubits>(move);
        const QpuId pa = assignment_.qpu_of[s.a];
        const QpuId pb = assignment_.qpu_of[s.b];
        members_[pa] = with(without(members_[pa], s.a), s.b);
        members_[pb] = with(without(members_[pb], s.b), s.a);
        std::swap(assignment_.qpu_of[s.a], assignment_.qpu_of[s.b]);
    }
    inter_ += t.inter;
    move_ += t.move;
    local_sum_ += t.local;
    local_[t.p1] = t.local1;
    local_[t.p2] = t.local2;
}

double delta_total(const AnnealState &state, const Move &move) {
    return state.delta(move);
}

}  // namespace dqcmap
