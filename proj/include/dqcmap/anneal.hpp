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
#include <optional>
#include <span>
#include <vector>

#include "dqcmap/cost.hpp"
#include "dqcmap/rng.hpp"

namespace dqcmap {

/// Unset optionals are resolved per segment: T0 from 100 sampled moves
/// (mean |dE|), iterations 500 * n_qubits, cooling rate 10 / iterations.
struct AnnealParams {
    std::optional<double> t0;
    std::optional<double> cooling_rate;
    std::optional<int> iters_per_segment;
    double relocate_weight = 0.5;
    double swap_weight = 0.5;
    std::uint64_t seed = 0;
    bool record_trace = false;
};

/// T_k = T0 / (1 + alpha * k).
double cooling(double t0, double alpha, long k);

/// 1 when dE <= 0, otherwise exp(-dE / T). Throws ParameterError for T <= 0.
double accept_probability(double delta, double temperature);

/// Random capacity-preserving move: a relocation to a QPU in `domain` with
/// room, or a swap of two qubits on different QPUs, chosen by the configured
/// weights. Falls back to the other kind when the chosen one is impossible;
/// nullopt when neither is.
std::optional<Move> propose(const AnnealState &state, Rng &rng, const AnnealParams &params,
                            std::span<const QpuId> domain);

struct TraceEntry {
    long iteration = 0;
    double delta = 0.0;
    double temperature = 0.0;
    double draw = -1.0;  // uniform draw for uphill proposals, -1 otherwise
    bool accepted = false;
};

struct AnnealResult {
    Assignment assignment;
    CostBreakdown cost;
    double t0 = 0.0;
    long accepted = 0;
    std::vector<TraceEntry> trace;
};

/// Simulated annealing over one segment, starting from `init` and charging
/// movement against `prev` (nullptr for the first segment). Returns the best
/// assignment seen, so the result never costs more than `init`.
/// An empty `domain` means every QPU in the cluster.
AnnealResult anneal_segment(const Assignment &init, const Segment &seg, const Assignment *prev,
                            const ClusterTopology &cluster, const CostParams &cp, const AnnealParams &ap,
                            std::span<const QpuId> domain = {});

}  // namespace dqcmap
