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

#include "dqcmap/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dqcmap/errors.hpp"
#include "dqcmap/rng.hpp"
#include "json.hpp"

namespace dqcmap {

using Json = nlohmann::ordered_json;

double reduction(double baseline_total, double method_total) {
    if (baseline_total == 0.0) {
        return 0.0;
    }
    return (baseline_total - method_total) / baseline_total;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw ParameterError("median of an empty list");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

Plan baseline_plan(const std::vector<Segment> &segments, int n_qubits, const ClusterTopology &cluster,
                   const CostParams &cp, std::uint64_t seed) {
    const Assignment a = random_placement(n_qubits, cluster, seed);
    return plan_from_assignments(segments, std::vector<Assignment>(segments.size(), a), cluster, cp);
}

MapResult run_map(const LayeredCircuit &lc, const ClusterTopology &cluster, const CompileOptions &opts) {
    MapResult r;
    r.plan = compile(lc, cluster, opts);
    std::vector<Segment> segments;
    for (const auto &step : r.plan.steps) {
        segments.push_back(step.segment);
    }
    r.baseline = baseline_plan(segments, lc.n_qubits(), cluster, opts.costs, derive_seed(opts.seed, "baseline"));
    r.reduction = reduction(r.baseline.total_cost, r.plan.total_cost);
    return r;
}

AblationResult run_ablation(const LayeredCircuit &lc, const ClusterTopology &cluster, const CompileOptions &opts) {
    AblationResult r;
    r.seed = opts.seed;

    CompileOptions full = opts;
    full.mode = SegmentationMode::Pattern;
    full.anneal_enabled = true;
    r.l3 = compile(lc, cluster, full);

    CompileOptions no_anneal = full;
    no_anneal.anneal_enabled = false;
    r.l1 = compile(lc, cluster, no_anneal);

    CompileOptions random_seg = full;
    random_seg.mode = SegmentationMode::Random;
    random_seg.random_segments = static_cast<int>(r.l3.steps.size());
    r.l2 = compile(lc, cluster, random_seg);

    std::vector<Segment> segments;
    for (const auto &step : r.l3.steps) {
        segments.push_back(step.segment);
    }
    r.baseline = baseline_plan(segments, lc.n_qubits(), cluster, opts.costs, derive_seed(opts.seed, "baseline"));
    r.reduction_l1 = reduction(r.baseline.total_cost, r.l1.total_cost);
    r.reduction_l2 = reduction(r.baseline.total_cost, r.l2.total_cost);
    r.reduction_l3 = reduction(r.baseline.total_cost, r.l3.total_cost);
    return r;
}

std::vector<SweepRow> run_sweep_ratio(const LayeredCircuit &lc, const ClusterTopology &cluster,
                                      const CompileOptions &opts, const std::vector<double> &ratios) {
    std::vector<SweepRow> rows;
    for (double ratio : ratios) {
        if (!(ratio > 0.0)) {
            throw ParameterError("sweep ratios must be positive");
        }
        CompileOptions o = opts;
        o.costs.remote_op_cost = ratio * o.costs.cx_cost;
        o.costs.teleport_cost = ratio * o.costs.cx_cost;
        const Plan plan = compile(lc, cluster, o);
        SweepRow row;
        row.ratio = ratio;
        row.totals = plan.totals();
        if (row.totals.e_total > 0.0) {
            row.inter_share = o.costs.gamma1 * row.totals.e_inter / row.totals.e_total;
            row.local_share = o.costs.gamma2 * row.totals.e_local / row.totals.e_total;
            row.move_share = o.costs.gamma3 * row.totals.e_move / row.totals.e_total;
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

Json cost_json(const CostBreakdown &b) {
    Json j;
    j["e_inter"] = b.e_inter;
    j["e_local"] = b.e_local;
    j["e_move"] = b.e_move;
    j["e_total"] = b.e_total;
    j["epr_pairs"] = b.epr_pairs;
    return j;
}

Json header(const LayeredCircuit &lc, const ClusterTopology &cluster, const CompileOptions &opts,
            const RunMetadata &meta) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = kToolVersion;
    j["command"] = meta.command;
    j["seed"] = meta.seed;

    Json circuit;
    circuit["name"] = lc.circuit().name();
    circuit["source"] = meta.circuit_source;
    circuit["n_qubits"] = lc.n_qubits();
    circuit["operations"] = lc.circuit().size();
    circuit["two_qubit_gates"] = lc.circuit().two_qubit_gate_count();
    circuit["depth"] = lc.depth();
    j["circuit"] = circuit;

    Json topo;
    topo["source"] = meta.topology_source;
    topo["qpus"] = Json::array();
    for (const auto &q : cluster.qpus()) {
        topo["qpus"].push_back({{"name", q.name},
                                {"comp_capacity", q.comp_capacity},
                                {"comm_qubits", q.comm_qubits},
                                {"coupling_edges", q.coupling.size()}});
    }
    topo["links"] = Json::array();
    for (const auto &l : cluster.links()) {
        topo["links"].push_back({{"a", l.a}, {"b", l.b}, {"cost_factor", l.cost_factor}});
    }
    j["topology"] = topo;

    Json params;
    const SegmentationParams seg = opts.segmentation.value_or(default_segmentation_params(lc));
    params["segmentation"] = {{"mode", opts.mode == SegmentationMode::Pattern ? "pattern" : "random"},
                              {"window", seg.window},
                              {"top_k", seg.top_k},
                              {"theta", seg.theta},
                              {"min_segment_len", seg.min_segment_len}};
    params["lambda"] = opts.lambda ? Json(*opts.lambda) : Json("auto");
    params["partitions"] = opts.partitions.value_or(cluster.size());
    params["costs"] = {{"gamma1", opts.costs.gamma1},          {"gamma2", opts.costs.gamma2},
                       {"gamma3", opts.costs.gamma3},          {"cx_cost", opts.costs.cx_cost},
                       {"swap_cost", opts.costs.swap_cost},    {"remote_op_cost", opts.costs.remote_op_cost},
                       {"teleport_cost", opts.costs.teleport_cost}};
    const int iters = opts.anneal.iters_per_segment.value_or(500 * lc.n_qubits());
    params["anneal"] = {{"enabled", opts.anneal_enabled},
                        {"t0", opts.anneal.t0 ? Json(*opts.anneal.t0) : Json("auto")},
                        {"cooling_rate", opts.anneal.cooling_rate.value_or(10.0 / iters)},
                        {"iters_per_segment", iters},
                        {"relocate_weight", opts.anneal.relocate_weight},
                        {"swap_weight", opts.anneal.swap_weight}};
    j["params"] = params;
    return j;
}

Json plan_json(const Plan &plan) {
    Json j;
    j["n_segments"] = plan.steps.size();
    j["lambda"] = plan.lambda;
    j["segments"] = Json::array();
    for (const auto &step : plan.steps) {
        Json s;
        s["index"] = step.segment.index;
        s["from_layer"] = step.segment.from_layer;
        s["to_layer"] = step.segment.to_layer;
        s["layers"] = step.segment.length();
        s["two_qubit_gates"] = step.segment.interactions.total();
        s["assignment"] = step.assignment.qpu_of;
        s["layouts"] = Json::array();
        for (const auto &lay : step.layouts) {
            Json placed = Json::array();
            for (auto [q, phys] : lay.physical) {
                placed.push_back({q, phys});
            }
            s["layouts"].push_back({{"qpu", lay.qpu}, {"physical", placed}});
        }
        s["t0"] = step.t0;
        s["cost"] = cost_json(step.cost);
        j["segments"].push_back(std::move(s));
    }
    j["totals"] = cost_json(plan.totals());
    return j;
}

Json totals_only(const Plan &plan) {
    Json j;
    j["n_segments"] = plan.steps.size();
    j["totals"] = cost_json(plan.totals());
    return j;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

std::string map_report_json(const MapResult &result, const LayeredCircuit &lc, const ClusterTopology &cluster,
                            const CompileOptions &opts, const RunMetadata &meta) {
    Json j = header(lc, cluster, opts, meta);
    j["plan"] = plan_json(result.plan);
    j["baseline"] = {{"method", "random_placement"}, {"plan", totals_only(result.baseline)}};
    j["reduction"] = result.reduction;
    return j.dump(2) + "\n";
}

std::string plan_csv(const Plan &plan) {
    std::ostringstream out;
    out << "segment,from_layer,to_layer,two_qubit_gates,e_inter,e_local,e_move,e_total,epr_pairs,assignment\n";
    for (const auto &step : plan.steps) {
        out << step.segment.index << ',' << step.segment.from_layer << ',' << step.segment.to_layer << ','
            << step.segment.interactions.total() << ',' << format_number(step.cost.e_inter) << ','
            << format_number(step.cost.e_local) << ',' << format_number(step.cost.e_move) << ','
            << format_number(step.cost.e_total) << ',' << step.cost.epr_pairs << ',';
        for (std::size_t q = 0; q < step.assignment.qpu_of.size(); ++q) {
            out << (q ? " " : "") << step.assignment.qpu_of[q];
        }
        out << '\n';
    }
    return out.str();
}

std::string ablation_report_json(const std::vector<AblationResult> &runs, const LayeredCircuit &lc,
                                 const ClusterTopology &cluster, const CompileOptions &opts,
                                 const RunMetadata &meta) {
    if (runs.empty()) {
        throw ParameterError("ablation report needs at least one run");
    }
    Json j = header(lc, cluster, opts, meta);
    j["runs"] = Json::array();
    std::vector<double> r1, r2, r3;
    for (const auto &run : runs) {
        Json arms;
        arms["baseline"] = totals_only(run.baseline);
        arms["L1"] = totals_only(run.l1);
        arms["L2"] = totals_only(run.l2);
        arms["L3"] = totals_only(run.l3);
        j["runs"].push_back({{"seed", run.seed},
                             {"arms", arms},
                             {"reduction", {{"L1", run.reduction_l1}, {"L2", run.reduction_l2}, {"L3", run.reduction_l3}}}});
        r1.push_back(run.reduction_l1);
        r2.push_back(run.reduction_l2);
        r3.push_back(run.reduction_l3);
    }
    j["median_reduction"] = {{"L1", median(r1)}, {"L2", median(r2)}, {"L3", median(r3)}};
    return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow> &rows) {
    std::ostringstream out;
    out << "ratio,e_inter,e_local,e_move,e_total,inter_share,local_share,move_share,epr_pairs\n";
    for (const auto &r : rows) {
        out << format_number(r.ratio) << ',' << format_number(r.totals.e_inter) << ','
            << format_number(r.totals.e_local) << ',' << format_number(r.totals.e_move) << ','
            << format_number(r.totals.e_total) << ',' << format_number(r.inter_share) << ','
            << format_number(r.local_share) << ',' << format_number(r.move_share) << ',' << r.totals.epr_pairs
            << '\n';
    }
    return out.str();
}

std::string sweep_report_json(const std::vector<SweepRow> &rows, const LayeredCircuit &lc,
                              const ClusterTopology &cluster, const CompileOptions &opts, const RunMetadata &meta) {
    Json j = header(lc, cluster, opts, meta);
    j["rows"] = Json::array();
    for (const auto &r : rows) {
        j["rows"].push_back({{"ratio", r.ratio},
                             {"totals", cost_json(r.totals)},
                             {"inter_share", r.inter_share},
                             {"local_share", r.local_share},
                             {"move_share", r.move_share}});
    }
    return j.dump(2) + "\n";
}

}  // namespace dqcmap
