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

#include "dqcmap/compile.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "dqcmap/errors.hpp"
#include "dqcmap/rng.hpp"

namespace dqcmap {

CostBreakdown Plan::totals() const {
    CostBreakdown sum;
    for (const auto &step : steps) {
        sum.e_inter += step.cost.e_inter;
        sum.e_local += step.cost.e_local;
        sum.e_move += step.cost.e_move;
        sum.e_total += step.cost.e_total;
        sum.epr_pairs += step.cost.epr_pairs;
    }
    return sum;
}

Plan plan_from_assignments(const std::vector<Segment> &segments, const std::vector<Assignment> &assignments,
                           const ClusterTopology &cluster, const CostParams &cp) {
    if (segments.size() != assignments.size()) {
        throw ValidationError("need exactly one assignment per segment");
    }
    Plan plan;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (!is_feasible(assignments[s], cluster)) {
            throw ValidationError("assignment for segment " + std::to_string(s + 1) + " violates capacity");
        }
        PlanStep step;
        step.segment = segments[s];
        step.assignment = assignments[s];
        step.assignment.segment = segments[s].index;
        const Assignment *prev = s > 0 ? &assignments[s - 1] : nullptr;
        step.cost = total(assignments[s], segments[s], prev, cluster, cp);
        std::vector<std::vector<Qubit>> members(cluster.size());
        for (Qubit q = 0; q < assignments[s].n_qubits(); ++q) {
            members[assignments[s].qpu_of[q]].push_back(q);
        }
        for (QpuId p = 0; p < cluster.size(); ++p) {
            if (!members[p].empty()) {
                step.layouts.push_back(intra_layout(cluster, p, members[p], segments[s].interactions));
            }
        }
        plan.total_cost += step.cost.e_total;
        plan.epr_total += step.cost.epr_pairs;
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

std::vector<Segment> plan_segments(const LayeredCircuit &lc, const CompileOptions &opts) {
    const SegmentationParams params = opts.segmentation.value_or(default_segmentation_params(lc));
    auto pattern = segment(lc, params);
    if (opts.mode == SegmentationMode::Pattern) {
        return pattern;
    }
    const int count = opts.random_segments.value_or(static_cast<int>(pattern.size()));
    return random_segment(lc, count, derive_seed(opts.seed, "segmentation"));
}

Plan compile(const LayeredCircuit &lc, const ClusterTopology &cluster, const CompileOptions &opts) {
    check_capacity(lc.n_qubits(), cluster);
    validate(opts.costs);
    if (lc.depth() == 0) {
        throw ParameterError("circuit has no operations");
    }
    Plan plan = compile_segments(plan_segments(lc, opts), lc.n_qubits(), cluster, opts);
    plan.segmentation = opts.segmentation.value_or(default_segmentation_params(lc));
    return plan;
}

Plan compile_segments(const std::vector<Segment> &segments, int n, const ClusterTopology &cluster,
                      const CompileOptions &opts) {
    check_capacity(n, cluster);
    validate(opts.costs);
    if (segments.empty()) {
        throw ParameterError("nothing to compile: no segments");
    }
    const double lambda = opts.lambda.value_or(default_lambda(static_cast<int>(segments.size())));
    const int partitions = opts.partitions.value_or(cluster.size());
    const InteractionGraph graph = build_graph(segments, lambda, n);
    Assignment current = cluster_graph(graph, cluster, partitions);

    // Annealing may use the chosen QPUs plus any the capacity repair spilled onto.
    std::vector<QpuId> domain = largest_qpus(cluster, partitions);
    for (QpuId p : current.qpu_of) {
        if (std::find(domain.begin(), domain.end(), p) == domain.end()) {
            domain.push_back(p);
        }
    }
    std::sort(domain.begin(), domain.end());

    std::vector<Assignment> assignments;
    std::vector<double> t0s;
    for (const auto &seg : segments) {
        double t0 = 0.0;
        if (opts.anneal_enabled) {
            AnnealParams ap = opts.anneal;
            ap.seed = derive_seed(opts.seed, "anneal/" + std::to_string(seg.index));
            ap.record_trace = false;
            const Assignment *prev = assignments.empty() ? nullptr : &assignments.back();
            AnnealResult r = anneal_segment(current, seg, prev, cluster, opts.costs, ap, domain);
            current = std::move(r.assignment);
            t0 = r.t0;
        }
        current.segment = seg.index;
        assignments.push_back(current);
        t0s.push_back(t0);
    }

    Plan plan = plan_from_assignments(segments, assignments, cluster, opts.costs);
    for (std::size_t s = 0; s < plan.steps.size(); ++s) {
        plan.steps[s].t0 = t0s[s];
    }
    plan.lambda = lambda;
    plan.partitions = partitions;
    return plan;
}

QuantumSwitch replay_epr(const Plan &plan, const ClusterTopology &cluster) {
    QuantumSwitch sw(cluster);
    const DistanceTables &dist = cluster.distances();
    for (std::size_t s = 0; s < plan.steps.size(); ++s) {
        const auto &step = plan.steps[s];
        const auto &where = step.assignment.qpu_of;
        for (const auto &[pair, f] : step.segment.interactions.pairs) {
            if (where[pair.lo] == where[pair.hi]) {
                continue;
            }
            const auto path = dist.inter_path(where[pair.lo], where[pair.hi]);
            for (long i = 0; i < f; ++i) {
                sw.record_remote_op(path);
            }
        }
        if (s == 0) {
            continue;
        }
        const auto &before = plan.steps[s - 1].assignment.qpu_of;
        for (std::size_t q = 0; q < where.size(); ++q) {
            if (before[q] != where[q]) {
                sw.record_teleport(dist.inter_path(before[q], where[q]));
            }
        }
    }
    return sw;
}

BruteForceResult brute_force_optimum(const std::vector<Segment> &segments, int n_qubits,
                                     const ClusterTopology &cluster, const CostParams &cp) {
    const int n_qpus = cluster.size();
    if (n_qubits > 10 || n_qpus > 3) {
        throw ParameterError("brute force is limited to 10 qubits and 3 QPUs");
    }
    if (segments.empty()) {
        throw ParameterError("brute force needs at least one segment");
    }
    check_capacity(n_qubits, cluster);
    validate(cp);

    // Assignments are indexed by base-n_qpus digits: qubit q's QPU is digit q.
    std::size_t states = 1;
    std::vector<std::size_t> stride(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
        stride[q] = states;
        states *= static_cast<std::size_t>(n_qpus);
    }
    auto decode = [&](std::size_t idx) {
        Assignment a;
        a.qpu_of.resize(n_qubits);
        for (int q = 0; q < n_qubits; ++q) {
            a.qpu_of[q] = static_cast<QpuId>((idx / stride[q]) % n_qpus);
        }
        return a;
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<char> feasible(states);
    for (std::size_t idx = 0; idx < states; ++idx) {
        feasible[idx] = is_feasible(decode(idx), cluster);
    }

    // Static (inter + local) cost of each feasible state for one segment.
    auto static_costs = [&](const Segment &seg) {
        const SegmentCostModel model(cluster, seg, cp, n_qubits);
        const DistanceTables &dist = cluster.distances();
        std::vector<double> cost(states, inf);
        for (std::size_t idx = 0; idx < states; ++idx) {
            if (!feasible[idx]) {
                continue;
            }
            const Assignment a = decode(idx);
            double inter = 0.0;
            for (const auto &[pair, f] : seg.interactions.pairs) {
                inter += static_cast<double>(f) * cp.remote_op_cost * dist.inter(a.qpu_of[pair.lo], a.qpu_of[pair.hi]);
            }
            std::vector<std::vector<Qubit>> members(n_qpus);
            for (Qubit q = 0; q < n_qubits; ++q) {
                members[a.qpu_of[q]].push_back(q);
            }
            double local = 0.0;
            for (QpuId p = 0; p < n_qpus; ++p) {
                local += model.local_cost(p, members[p]);
            }
            cost[idx] = cp.gamma1 * inter + cp.gamma2 * local;
        }
        return cost;
    };
    auto move_cost = [&](QpuId from, QpuId to) {
        return cp.gamma3 * cp.teleport_cost * cluster.distances().inter(from, to);
    };

    std::vector<std::vector<double>> best;
    best.push_back(static_costs(segments[0]));
    for (std::size_t s = 1; s < segments.size(); ++s) {
        // Movement cost is a sum over qubits, so min over predecessors
        // factorises into one relaxation pass per qubit digit.
        std::vector<double> relaxed = best.back();
        for (int q = 0; q < n_qubits; ++q) {
            std::vector<double> next(states, inf);
            for (std::size_t idx = 0; idx < states; ++idx) {
                const auto digit = static_cast<QpuId>((idx / stride[q]) % n_qpus);
                const std::size_t base = idx - digit * stride[q];
                for (QpuId from = 0; from < n_qpus; ++from) {
                    const double v = relaxed[base + from * stride[q]] + move_cost(from, digit);
                    next[idx] = std::min(next[idx], v);
                }
            }
            relaxed = std::move(next);
        }
        std::vector<double> cost = static_costs(segments[s]);
        for (std::size_t idx = 0; idx < states; ++idx) {
            cost[idx] += relaxed[idx];
        }
        best.push_back(std::move(cost));
    }

    auto argmin = [&](const std::vector<double> &v) {
        return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
    };
    BruteForceResult result;
    std::size_t idx = argmin(best.back());
    result.cost = best.back()[idx];
    std::vector<std::size_t> chosen{idx};
    for (std::size_t s = segments.size() - 1; s > 0; --s) {
        const Assignment next = decode(chosen.back());
        std::size_t arg = 0;
        double arg_v = inf;
        for (std::size_t i = 0; i < states; ++i) {
            if (!feasible[i]) {
                continue;
            }
            const Assignment a = decode(i);
            double v = best[s - 1][i];
            for (int q = 0; q < n_qubits; ++q) {
                v += move_cost(a.qpu_of[q], next.qpu_of[q]);
            }
            if (v < arg_v) {
                arg_v = v;
                arg = i;
            }
        }
        chosen.push_back(arg);
    }
    std::reverse(chosen.begin(), chosen.end());
    for (std::size_t s = 0; s < chosen.size(); ++s) {
        Assignment a = decode(chosen[s]);
        a.segment = segments[s].index;
        result.assignments.push_back(std::move(a));
    }
    return result;
}

}  // namespace dqcmap
