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

#include "dqcmap/anneal.hpp"

#include <cmath>
#include <numeric>

#include "dqcmap/errors.hpp"

namespace dqcmap {

double cooling(double t0, double alpha, long k) {
    return t0 / (1.0 + alpha * static_cast<double>(k));
}

double accept_probability(double delta, double temperature) {
    if (!(temperature > 0.0)) {
        throw ParameterError("temperature must be positive");
    }
    if (delta <= 0.0) {
        return 1.0;
    }
    return std::exp(-delta / temperature);
}

namespace {

std::optional<Move> propose_relocate(const AnnealState &state, Rng &rng, std::span<const QpuId> domain) {
    const auto &where = state.assignment().qpu_of;
    const Qubit q = static_cast<Qubit>(rng.below(where.size()));
    std::vector<QpuId> targets;
    for (QpuId p : domain) {
        if (p != where[q] && state.loads()[p] < state.model().cluster().qpu(p).comp_capacity) {
            targets.push_back(p);
        }
    }
    if (targets.empty()) {
        return std::nullopt;
    }
    return Relocate{q, targets[rng.below(targets.size())]};
}

std::optional<Move> propose_swap(const AnnealState &state, Rng &rng) {
    const auto &where = state.assignment().qpu_of;
    const int n = static_cast<int>(where.size());
    const Qubit a = static_cast<Qubit>(rng.below(where.size()));
    const int others = n - state.loads()[where[a]];
    if (others == 0) {
        return std::nullopt;
    }
    std::size_t pick = rng.below(static_cast<std::size_t>(others));
    for (Qubit b = 0; b < n; ++b) {
        if (where[b] != where[a] && pick-- == 0) {
            return SwapQubits{a, b};
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Move> propose(const AnnealState &state, Rng &rng, const AnnealParams &params,
                            std::span<const QpuId> domain) {
    const double total = params.relocate_weight + params.swap_weight;
    if (!(total > 0.0) || params.relocate_weight < 0.0 || params.swap_weight < 0.0) {
        throw ParameterError("move weights must be non-negative and not both zero");
    }
    const bool relocate_first = rng.uniform01() * total < params.relocate_weight;
    if (relocate_first) {
        if (auto m = propose_relocate(state, rng, domain)) {
            return m;
        }
        return propose_swap(state, rng);
    }
    if (auto m = propose_swap(state, rng)) {
        return m;
    }
    return propose_relocate(state, rng, domain);
}

AnnealResult anneal_segment(const Assignment &init, const Segment &seg, const Assignment *prev,
                            const ClusterTopology &cluster, const CostParams &cp, const AnnealParams &ap,
                            std::span<const QpuId> domain) {
    const int n = init.n_qubits();
    const int iters = ap.iters_per_segment.value_or(500 * n);
    if (iters < 1) {
        throw ParameterError("iterations per segment must be >= 1");
    }
    const double alpha = ap.cooling_rate.value_or(10.0 / iters);
    if (!(alpha > 0.0)) {
        throw ParameterError("cooling rate must be positive");
    }
    if (ap.t0 && !(*ap.t0 > 0.0)) {
        throw ParameterError("initial temperature must be positive");
    }
    std::vector<QpuId> all;
    if (domain.empty()) {
        all.resize(cluster.size());
        std::iota(all.begin(), all.end(), 0);
        domain = all;
    }

    const SegmentCostModel model(cluster, seg, cp, n);
    AnnealState state(model, init, prev);
    Rng rng(ap.seed);

    AnnealResult result;
    if (ap.t0) {
        result.t0 = *ap.t0;
    } else {
        double sum = 0.0;
        int samples = 0;
        for (int i = 0; i < 100; ++i) {
            if (auto m = propose(state, rng, ap, domain)) {
                sum += std::abs(state.delta(*m));
                ++samples;
            }
        }
        result.t0 = samples > 0 && sum > 0.0 ? sum / samples : 1.0;
    }

    Assignment best = state.assignment();
    double best_total = state.e_total();
    for (long k = 0; k < iters; ++k) {
        const double temperature = cooling(result.t0, alpha, k);
        auto move = propose(state, rng, ap, domain);
        if (!move) {
            break;  // nothing can move (single usable QPU)
        }
        TraceEntry entry{k, state.delta(*move), temperature, -1.0, false};
        if (entry.delta <= 0.0) {
            entry.accepted = true;
        } else {
            entry.draw = rng.uniform01();
            entry.accepted = entry.draw < accept_probability(entry.delta, temperature);
        }
        if (entry.accepted) {
            state.apply(*move);
            ++result.accepted;
            const double now = state.e_total();
            if (now < best_total - 1e-12 * std::max(1.0, std::abs(best_total))) {
                best_total = now;
                best = state.assignment();
            }
        }
        if (ap.record_trace) {
            result.trace.push_back(entry);
        }
    }
    best.segment = seg.index;
    result.cost = total(best, seg, prev, cluster, cp);
    result.assignment = std::move(best);
    return result;
}

}  // namespace dqcmap
