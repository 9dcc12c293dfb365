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
#include <string>
#include <vector>

#include "dqcmap/compile.hpp"

namespace dqcmap {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char *kToolVersion = "dqcmap 0.1.0";

/// (baseline - method) / baseline; 0 when the baseline costs nothing.
double reduction(double baseline_total, double method_total);

double median(std::vector<double> values);

/// Random placement held fixed across all segments (no movement).
Plan baseline_plan(const std::vector<Segment> &segments, int n_qubits, const ClusterTopology &cluster,
                   const CostParams &cp, std::uint64_t seed);

struct MapResult {
    Plan plan;
    Plan baseline;
    double reduction = 0.0;
};

MapResult run_map(const LayeredCircuit &lc, const ClusterTopology &cluster, const CompileOptions &opts);

/// Ablation arms, all scored by the same objective:
///   baseline  random placement
///   L1        pattern segmentation + clustering, no annealing
///   L2        random segmentation (same segment count) + clustering + annealing
///   L3        pattern segmentation + clustering + annealing
struct AblationResult {
    std::uint64_t seed = 0;
    Plan baseline;
    Plan l1;
    Plan l2;
    Plan l3;
    double reduction_l1 = 0.0;
    double reduction_l2 = 0.0;
    double reduction_l3 = 0.0;
};

AblationResult run_ablation(const LayeredCircuit &lc, const ClusterTopology &cluster, const CompileOptions &opts);

struct SweepRow {
    double ratio = 0.0;
    CostBreakdown totals;
    double inter_share = 0.0;  // gamma1 * e_inter / e_total
    double local_share = 0.0;  // gamma2 * e_local / e_total
    double move_share = 0.0;   // gamma3 * e_move / e_total
};

/// Full compilation per inter:intra ratio, with
/// remote_op_cost = teleport_cost = ratio * cx_cost.
std::vector<SweepRow> run_sweep_ratio(const LayeredCircuit &lc, const ClusterTopology &cluster,
                                      const CompileOptions &opts, const std::vector<double> &ratios);

/// Context recorded in report headers.
struct RunMetadata {
    std::string command;
    std::uint64_t seed = 0;
    std::string circuit_source;
    std::string topology_source;
};

std::string map_report_json(const MapResult &result, const LayeredCircuit &lc, const ClusterTopology &cluster,
                            const CompileOptions &opts, const RunMetadata &meta);

/// One row per segment:
/// segment,from_layer,to_layer,two_qubit_gates,e_inter,e_local,e_move,e_total,epr_pairs,assignment
std::string plan_csv(const Plan &plan);

std::string ablation_report_json(const std::vector<AblationResult> &runs, const LayeredCircuit &lc,
                                 const ClusterTopology &cluster, const CompileOptions &opts,
                                 const RunMetadata &meta);

/// Columns: ratio,e_inter,e_local,e_move,e_total,inter_share,local_share,move_share,epr_pairs
std::string sweep_csv(const std::vector<SweepRow> &rows);

std::string sweep_report_json(const std::vector<SweepRow> &rows, const LayeredCircuit &lc,
                              const ClusterTopology &cluster, const CompileOptions &opts, const RunMetadata &meta);

}  // namespace dqcmap
