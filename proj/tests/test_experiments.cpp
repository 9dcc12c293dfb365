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

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dqcmap/benchmarks.hpp"
#include "dqcmap/errors.hpp"
#include "dqcmap/experiments.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace dqcmap {
namespace {

using Json = nlohmann::json;

ClusterTopology shipped_topology() {
    std::ifstream in(std::string(DQCMAP_DATA_DIR) + "/topologies/hetero_6_6_8.json");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_cluster(buf.str());
}

CompileOptions quick_options(std::uint64_t seed) {
    CompileOptions o;
    o.seed = seed;
    o.anneal.iters_per_segment = 2000;
    return o;
}

TEST(Reduction, Definition) {
    EXPECT_DOUBLE_EQ(reduction(200.0, 50.0), 0.75);
    EXPECT_DOUBLE_EQ(reduction(100.0, 120.0), -0.2);
    EXPECT_EQ(reduction(0.0, 0.0), 0.0);
}

TEST(Median, OddEvenEmpty) {
    EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
    EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
    EXPECT_THROW(median({}), ParameterError);
}

TEST(BaselinePlan, FixedPlacementNoMovement) {
    const auto lc = layerize(gen_qft(8));
    const auto c = testing::line_cluster({4, 4});
    const auto segs = segment(lc, SegmentationParams{1, 2, 1.0, 1});
    const auto plan = baseline_plan(segs, 8, c, CostParams{}, 3);
    ASSERT_EQ(plan.steps.size(), segs.size());
    for (const auto &step : plan.steps) {
        EXPECT_EQ(step.assignment.qpu_of, plan.steps[0].assignment.qpu_of);
    }
    EXPECT_EQ(plan.totals().e_move, 0.0);
    EXPECT_EQ(baseline_plan(segs, 8, c, CostParams{}, 3).total_cost, plan.total_cost);
}

TEST(MapReport, SchemaAndTotals) {
    const auto lc = layerize(gen_qft(12));
    const auto c = shipped_topology();
    const auto opts = quick_options(4);
    const auto result = run_map(lc, c, opts);
    const Json j = Json::parse(map_report_json(result, lc, c, opts, RunMetadata{"map", 4, "bench:qft", "file"}));
    EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
    EXPECT_EQ(j["tool"], kToolVersion);
    EXPECT_EQ(j["seed"], 4);
    EXPECT_EQ(j["circuit"]["n_qubits"], 12);
    EXPECT_EQ(j["topology"]["qpus"].size(), 3u);
    const auto &segs = j["plan"]["segments"];
    ASSERT_EQ(segs.size(), result.plan.steps.size());
    double sum = 0;
    long epr = 0;
    int next = 1;
    for (const auto &s : segs) {
        EXPECT_EQ(s["from_layer"], next);
        next = s["to_layer"].get<int>() + 1;
        EXPECT_EQ(s["assignment"].size(), 12u);
        sum += s["cost"]["e_total"].get<double>();
        epr += s["cost"]["epr_pairs"].get<long>();
    }
    EXPECT_EQ(next, lc.depth() + 1);
    EXPECT_TRUE(testing::rel_close(sum, j["plan"]["totals"]["e_total"].get<double>()));
    EXPECT_EQ(epr, j["plan"]["totals"]["epr_pairs"].get<long>());
    const double base = j["baseline"]["plan"]["totals"]["e_total"];
    EXPECT_TRUE(testing::rel_close(j["reduction"].get<double>(), (base - sum) / base));
}

TEST(MapReport, ByteIdenticalForSameSeed) {
    const auto lc = layerize(gen_adder(10));
    const auto c = shipped_topology();
    const auto opts = quick_options(21);
    const RunMetadata meta{"map", 21, "bench:adder", "file"};
    EXPECT_EQ(map_report_json(run_map(lc, c, opts), lc, c, opts, meta),
              map_report_json(run_map(lc, c, opts), lc, c, opts, meta));
}

TEST(PlanCsv, FixedColumns) {
    const auto lc = layerize(gen_qft(6));
    const auto plan = compile(lc, testing::line_cluster({3, 3}), quick_options(1));
    const std::string csv = plan_csv(plan);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "segment,from_layer,to_layer,two_qubit_gates,e_inter,e_local,e_move,e_total,epr_pairs,assignment");
    int rows = 0;
    for (std::string line; std::getline(in, line);) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 9);
        ++rows;
    }
    EXPECT_EQ(rows, static_cast<int>(plan.steps.size()));
}

TEST(Ablation, ArmsShareCostModel) {
    const auto lc = layerize(gen_qft(10));
    const auto c = shipped_topology();
    const auto r = run_ablation(lc, c, quick_options(2));
    EXPECT_EQ(r.l1.steps.size(), r.l3.steps.size());
    EXPECT_EQ(r.l2.steps.size(), r.l3.steps.size());
    EXPECT_TRUE(testing::rel_close(r.reduction_l3, reduction(r.baseline.total_cost, r.l3.total_cost)));
    for (const Plan *p : {&r.l1, &r.l2, &r.l3}) {
        for (const auto &step : p->steps) {
            EXPECT_EQ(step.cost.e_total, total(step.assignment, step.segment,
                                               step.segment.index > 1 ? &p->steps[step.segment.index - 2].assignment
                                                                      : nullptr,
                                               c, CostParams{})
                                             .e_total);
        }
    }
    for (const auto &step : r.l1.steps) {
        EXPECT_EQ(step.t0, 0.0);
    }
}

TEST(Ablation, BaselineReproducible) {
    const auto lc = layerize(gen_adder(8));
    const auto c = shipped_topology();
    EXPECT_EQ(run_ablation(lc, c, quick_options(5)).baseline.total_cost,
              run_ablation(lc, c, quick_options(5)).baseline.total_cost);
}

TEST(Ablation, FullMethodBeatsBaselineOnShippedBenchmarks) {
    const auto c = shipped_topology();
    for (const Circuit &circ : {gen_qft(12), gen_adder(12), gen_qaoa(12, 1, derive_seed(0, "qaoa"))}) {
        const auto lc = layerize(circ);
        CompileOptions o;
        EXPECT_GE(run_ablation(lc, c, o).reduction_l3, 0.0) << circ.name();
    }
}

TEST(AblationReport, MediansOverRuns) {
    const auto lc = layerize(gen_qft(8));
    const auto c = shipped_topology();
    std::vector<AblationResult> runs;
    for (std::uint64_t s = 0; s < 3; ++s) {
        runs.push_back(run_ablation(lc, c, quick_options(s)));
    }
    const Json j = Json::parse(ablation_report_json(runs, lc, c, quick_options(0), RunMetadata{"ablate", 0, "", ""}));
    EXPECT_EQ(j["runs"].size(), 3u);
    EXPECT_DOUBLE_EQ(j["median_reduction"]["L3"].get<double>(),
                     median({runs[0].reduction_l3, runs[1].reduction_l3, runs[2].reduction_l3}));
    EXPECT_THROW(ablation_report_json({}, lc, c, quick_options(0), RunMetadata{}), ParameterError);
}

TEST(Sweep, RowsAndShares) {
    const auto lc = layerize(gen_adder(10));
    const auto c = shipped_topology();
    const auto rows = run_sweep_ratio(lc, c, quick_options(3), {5.0, 3.0, 1.0});
    ASSERT_EQ(rows.size(), 3u);
    for (const auto &r : rows) {
        EXPECT_TRUE(testing::rel_close(r.inter_share + r.local_share + r.move_share, 1.0));
        EXPECT_TRUE(testing::rel_close(r.totals.e_inter + r.totals.e_local + r.totals.e_move, r.totals.e_total));
    }
    const std::string csv = sweep_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "ratio,e_inter,e_local,e_move,e_total,inter_share,local_share,move_share,epr_pairs");
    EXPECT_THROW(run_sweep_ratio(lc, c, quick_options(3), {0.0}), ParameterError);
}

TEST(Sweep, FixedAssignmentScalesLinearly) {
    // Re-pricing one fixed plan: only the remote terms move, and linearly.
    const auto lc = layerize(gen_adder(10));
    const auto c = shipped_topology();
    const auto plan = compile(lc, c, quick_options(8));
    std::vector<Segment> segs;
    std::vector<Assignment> assigns;
    for (const auto &s : plan.steps) {
        segs.push_back(s.segment);
        assigns.push_back(s.assignment);
    }
    const auto one = plan_from_assignments(segs, assigns, c, CostParams::with_ratio(1.0)).totals();
    for (double r : {2.0, 4.0, 5.0}) {
        const auto t = plan_from_assignments(segs, assigns, c, CostParams::with_ratio(r)).totals();
        EXPECT_DOUBLE_EQ(t.e_local, one.e_local);
        EXPECT_TRUE(testing::rel_close(t.e_inter, r * one.e_inter));
        EXPECT_TRUE(testing::rel_close(t.e_move, r * one.e_move));
    }
}

}  // namespace
}  // namespace dqcmap
