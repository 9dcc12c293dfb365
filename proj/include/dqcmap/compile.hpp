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
#include <vector>

#include "dqcmap/anneal.hpp"
#include "dqcmap/circuit.hpp"
#include "dqcmap/cost.hpp"
#include "dqcmap/hardware.hpp"
#include "dqcmap/placement.hpp"
#include "dqcmap/segmentation.hpp"

namespace dqcmap {

enum class SegmentationMode { Pattern, Random };

/// Everything compile() needs besides the circuit and the cluster. Unset
/// optionals take the documented defaults.
struct CompileOptions {
    SegmentationMode mode = SegmentationMode::Pattern;
    std::optional<SegmentationParams> segmentation;
    std::optional<int> random_segments;  // Random mode; defaults to the pattern segment count
    std::optional<double> lambda;        // defaults to 3 / S
    std::optional<int> partitions;       // defaults to every QPU
    CostParams costs;
    AnnealParams anneal;  // its seed is ignored; per-segment seeds derive from `seed`
    bool anneal_enabled = true;
    std::uint64_t seed = 0;
};

struct PlanStep {
    Segment segment;
    Assignment assignment;
    std::vector<IntraLayout> layouts;  // QPUs holding at least one qubit
    CostBreakdown cost;
    double t0 = 0.0;  // annealing start temperature, 0 when not annealed
};

struct Plan {
    std::vector<PlanStep> steps;
    double total_cost = 0.0;
    long epr_total = 0;
    SegmentationParams segmentation;  // parameters in effect (pattern mode)
    double lambda = 0.0;
    int partitions = 0;

    /// Component sums over all steps.
    CostBreakdown totals() const;
};

/// Evaluates a fixed per-segment assignment list: costs chain movement
/// against the previous segment and layouts are recomputed per segment.
Plan plan_from_assignments(const std::vector<Segment> &segments, const std::vector<Assignment> &assignments,
                           const ClusterTopology &cluster, const CostParams &cp);

/// Segmentation, time-aware clustering for the first segment, then per-segment
/// annealing seeded with the previous segment's result.
Plan compile(const LayeredCircuit &lc, const ClusterTopology &cluster, const CompileOptions &opts);

/// The stages after segmentation: clustering on the decayed graph, then
/// chained per-segment annealing. The plan's segmentation field is left at
/// its default.
Plan compile_segments(const std::vector<Segment> &segments, int n_qubits, const ClusterTopology &cluster,
                      const CompileOptions &opts);

/// Segments compile() would use for these options.
std::vector<Segment> plan_segments(const LayeredCircuit &lc, const CompileOptions &opts);

/// Replays a plan through a fresh switch: every cut gate is a remote operation
/// and every qubit that changes QPU between segments is a teleport, each
/// routed along the fixed inter-QPU path.
QuantumSwitch replay_epr(const Plan &plan, const ClusterTopology &cluster);

struct BruteForceResult {
    std::vector<Assignment> assignments;
    double cost = 0.0;
};

/// Exact minimum of the summed per-segment objective by dynamic programming
/// over every capacity-feasible assignment. Refuses (ParameterError) beyond
/// 10 qubits or 3 QPUs.
BruteForceResult brute_force_optimum(const std::vector<Segment> &segments, int n_qubits,
                                     const ClusterTopology &cluster, const CostParams &cp);

}  // namespace dqcmap
