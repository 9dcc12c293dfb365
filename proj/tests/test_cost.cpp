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
#include <limits>
#include <queue>

#include "dqcmap/cost.hpp"
#include "dqcmap/errors.hpp"
#include "test_support.hpp"

namespace dqcmap {
namespace {

using testing::line_cluster;
using testing::make_segment;
using testing::rel_close;

int hops(const Qpu &q, int s, int t) {
    std::vector<int> dist(q.comp_capacity, -1);
    std::queue<int> bfs;
    dist[s] = 0;
    bfs.push(s);
    while (!bfs.empty()) {
        const int u = bfs.front();
        bfs.pop();
        for (auto [a, b] : q.coupling) {
            const int v = a == u ? b : (b == u ? a : -1);
            if (v >= 0 && dist[v] < 0) {
                dist[v] = dist[u] + 1;
                bfs.push(v);
            }
        }
    }
    return dist[t];
}

// From-scratch evaluator: layouts come from intra_layout, every distance is
// recomputed here.
CostBreakdown reference_total(const Assignment &a, const Segment &seg, const Assignment *prev,
                              const ClusterTopology &c, const CostParams &cp) {
    CostBreakdown b;
    std::vector<std::vector<Qubit>> members(c.size());
    for (Qubit q = 0; q < a.n_qubits(); ++q) {
        members[a.qpu_of[q]].push_back(q);
    }
    std::vector<IntraLayout> layouts;
    for (QpuId p = 0; p < c.size(); ++p) {
        layouts.push_back(intra_layout(c, p, members[p], seg.interactions));
    }
    for (auto [pair, f] : seg.interactions.pairs) {
        const QpuId pa = a.qpu_of[pair.lo], pb = a.qpu_of[pair.hi];
        if (pa == pb) {
            const int d = hops(c.qpu(pa), layouts[pa].physical_of(pair.lo), layouts[pa].physical_of(pair.hi));
            b.e_local += f * (cp.cx_cost + cp.swap_cost * std::max(0, d - 1));
        } else {
            b.e_inter += f * cp.remote_op_cost * c.distances().inter(pa, pb);
            b.epr_pairs += f * static_cast<long>(c.distances().inter_path(pa, pb).size() - 1);
        }
    }
    if (prev) {
        for (Qubit q = 0; q < a.n_qubits(); ++q) {
            const QpuId from = prev->qpu_of[q], to = a.qpu_of[q];
            if (from != to) {
                b.e_move += cp.teleport_cost * c.distances().inter(from, to);
                b.epr_pairs += static_cast<long>(c.distances().inter_path(from, to).size() - 1);
            }
        }
    }
    b.e_total = cp.gamma1 * b.e_inter + cp.gamma2 * b.e_local + cp.gamma3 * b.e_move;
    return b;
}

bool same(const CostBreakdown &x, const CostBreakdown &y) {
    return rel_close(x.e_inter, y.e_inter) && rel_close(x.e_local, y.e_local) && rel_close(x.e_move, y.e_move) &&
           rel_close(x.e_total, y.e_total) && x.epr_pairs == y.epr_pairs;
}

// Sum of f * coupling distance for a layout, the quantity the layout tries to
// keep small.
long weighted_distance(const ClusterTopology &c, const IntraLayout &lay, const InteractionCount &ic) {
    long total = 0;
    for (auto [pair, f] : ic.pairs) {
        total += f * hops(c.qpu(lay.qpu), lay.physical_of(pair.lo), lay.physical_of(pair.hi));
    }
    return total;
}

Assignment random_feasible(int n, const ClusterTopology &c, Rng &rng) {
    return random_placement(n, c, rng.next());
}

TEST(CostParams, RatioAndValidation) {
    const auto cp = CostParams::with_ratio(3.0);
    EXPECT_EQ(cp.remote_op_cost, 3.0);
    EXPECT_EQ(cp.teleport_cost, 3.0);
    EXPECT_EQ(cp.cx_cost, 1.0);
    EXPECT_EQ(cp.swap_cost, 3.0);
    CostParams bad;
    bad.gamma2 = -1;
    EXPECT_THROW(validate(bad), ParameterError);
    bad = CostParams{};
    bad.cx_cost = 0;
    EXPECT_THROW(validate(bad), ParameterError);
    EXPECT_THROW(CostParams::with_ratio(0.0), ParameterError);
}

TEST(IntraLayout, SingleQubitOnMaxDegree) {
    // Star centred on physical qubit 2.
    const ClusterTopology c({Qpu{"star", 4, {{2, 0}, {2, 1}, {2, 3}}, 1}}, {});
    const std::vector<Qubit> qs{5};
    const auto lay = intra_layout(c, 0, qs, InteractionCount{});
    EXPECT_EQ(lay.physical_of(5), 2);
}

TEST(IntraLayout, InteractingPairIsAdjacent) {
    const auto c = line_cluster({5});
    InteractionCount ic;
    ic.add(3, 7, 2);
    const std::vector<Qubit> qs{3, 7};
    const auto lay = intra_layout(c, 0, qs, ic);
    EXPECT_EQ(hops(c.qpu(0), lay.physical_of(3), lay.physical_of(7)), 1);
}

TEST(IntraLayout, RingChainMatchesExhaustiveOptimum) {
    const ClusterTopology c({testing::ring_qpu("r", 4)}, {});
    Rng rng(61);
    for (int t = 0; t < 20; ++t) {
        InteractionCount ic;
        ic.add(0, 1, 1 + static_cast<long>(rng.below(5)));
        ic.add(1, 2, 1 + static_cast<long>(rng.below(5)));
        ic.add(2, 3, 1 + static_cast<long>(rng.below(5)));
        const std::vector<Qubit> qs{0, 1, 2, 3};
        const auto lay = intra_layout(c, 0, qs, ic);

        std::vector<int> perm{0, 1, 2, 3};
        long best = std::numeric_limits<long>::max();
        do {
            IntraLayout trial{0, {{0, perm[0]}, {1, perm[1]}, {2, perm[2]}, {3, perm[3]}}};
            best = std::min(best, weighted_distance(c, trial, ic));
        } while (std::next_permutation(perm.begin(), perm.end()));
        EXPECT_EQ(weighted_distance(c, lay, ic), best);
    }
}

TEST(IntraLayout, Overfull) {
    const auto c = line_cluster({2});
    const std::vector<Qubit> qs{0, 1, 2};
    EXPECT_THROW(intra_layout(c, 0, qs, InteractionCount{}), InfeasibleError);
}

TEST(IntraLayout, IsInjective) {
    Rng rng(62);
    const auto c = gen_topology(TopologyKind::Ring, std::vector<int>{9, 7}, 4);
    for (int t = 0; t < 50; ++t) {
        const auto ic = testing::random_counts(9, 12, rng);
        std::vector<Qubit> qs{0, 1, 2, 3, 4, 5, 6, 7, 8};
        const auto lay = intra_layout(c, 0, qs, ic);
        std::vector<int> phys;
        for (auto [q, p] : lay.physical) {
            phys.push_back(p);
        }
        std::sort(phys.begin(), phys.end());
        EXPECT_EQ(std::unique(phys.begin(), phys.end()), phys.end());
        EXPECT_EQ(phys.size(), 9u);
    }
}

TEST(ELocal, NoColocatedPairs) {
    InteractionCount ic;
    ic.add(0, 1, 4);
    EXPECT_EQ(e_local(Assignment{{0, 1}}, make_segment(ic), line_cluster({2, 2}), CostParams{}), 0.0);
}

TEST(ELocal, AdjacentPair) {
    InteractionCount ic;
    ic.add(0, 1, 3);
    EXPECT_DOUBLE_EQ(e_local(Assignment{{0, 0}}, make_segment(ic), line_cluster({4}), CostParams{}), 3.0);
}

TEST(ELocal, DistanceThreePair) {
    // Greedy on a 4-qubit line: q1 -> 1, q2 -> 0, q0 -> 2, q3 -> 3. The pair
    // (2,3) ends up 3 hops apart and pays 2 routing swaps per gate.
    InteractionCount ic;
    ic.add(0, 1, 5);
    ic.add(1, 2, 5);
    ic.add(2, 3, 5);
    ic.add(0, 3, 1);
    const auto c = line_cluster({4});
    const std::vector<Qubit> qs{0, 1, 2, 3};
    const auto lay = intra_layout(c, 0, qs, ic);
    ASSERT_EQ(hops(c.qpu(0), lay.physical_of(2), lay.physical_of(3)), 3);
    const CostParams cp;
    const double expected = 5 * 1.0 + 5 * 1.0 + 5 * (1.0 + 2 * cp.swap_cost) + 1 * 1.0;
    EXPECT_DOUBLE_EQ(e_local(Assignment{{0, 0, 0, 0}}, make_segment(ic), c, cp), expected);
}

TEST(EInter, Examples) {
    InteractionCount ic;
    ic.add(0, 1, 2);
    const auto seg = make_segment(ic);
    EXPECT_EQ(e_inter(Assignment{{0, 0}}, seg, line_cluster({2, 2}), CostParams{}), 0.0);
    EXPECT_DOUBLE_EQ(e_inter(Assignment{{0, 1}}, seg, line_cluster({2, 2}), CostParams{}), 10.0);
    // Two hops with cost factors 1 and 2.
    EXPECT_DOUBLE_EQ(e_inter(Assignment{{0, 2}}, seg, line_cluster({2, 2, 2}, {1.0, 2.0}), CostParams{}),
                     2 * 5.0 * 3.0);
}

TEST(EMove, Examples) {
    const auto c = line_cluster({2, 2});
    CostParams cp;
    cp.teleport_cost = 4.0;
    EXPECT_EQ(e_move(Assignment{{0, 1}}, Assignment{{0, 1}}, c, cp), 0.0);
    EXPECT_DOUBLE_EQ(e_move(Assignment{{0, 0}}, Assignment{{0, 1}}, c, cp), 4.0);
    EXPECT_DOUBLE_EQ(e_move(Assignment{{0, 1}}, Assignment{{1, 0}}, c, cp), 8.0);
}

TEST(Total, CoefficientZeroing) {
    Rng rng(63);
    const auto c = line_cluster({3, 3});
    const auto seg = make_segment(testing::random_counts(6, 8, rng));
    CostParams cp;
    cp.gamma1 = 0;
    cp.gamma3 = 0;
    cp.gamma2 = 2.5;
    const Assignment a{{0, 0, 0, 1, 1, 1}}, prev{{1, 0, 0, 0, 1, 1}};
    const auto b = total(a, seg, &prev, c, cp);
    EXPECT_DOUBLE_EQ(b.e_total, 2.5 * b.e_local);
}

TEST(Total, ColocatedNoMove) {
    Rng rng(64);
    const auto c = line_cluster({6, 2});
    const auto seg = make_segment(testing::random_counts(6, 8, rng));
    const Assignment a{{0, 0, 0, 0, 0, 0}};
    const auto b = total(a, seg, &a, c, CostParams{});
    EXPECT_EQ(b.e_inter, 0.0);
    EXPECT_EQ(b.e_move, 0.0);
    EXPECT_EQ(b.epr_pairs, 0);
    EXPECT_DOUBLE_EQ(b.e_total, b.e_local);
}

TEST(Total, MatchesReferenceEvaluator) {
    Rng rng(65);
    const auto c = gen_topology(TopologyKind::Line, std::vector<int>{3, 3}, 8);
    for (int t = 0; t < 200; ++t) {
        const auto seg = make_segment(testing::random_counts(6, 10, rng));
        CostParams cp;
        cp.gamma1 = rng.uniform01() * 2;
        cp.gamma2 = rng.uniform01() * 2;
        cp.gamma3 = rng.uniform01() * 2;
        const auto a = random_feasible(6, c, rng);
        const auto prev = random_feasible(6, c, rng);
        EXPECT_TRUE(same(total(a, seg, &prev, c, cp), reference_total(a, seg, &prev, c, cp)));
        EXPECT_TRUE(same(total(a, seg, nullptr, c, cp), reference_total(a, seg, nullptr, c, cp)));
    }
}

TEST(TotalProperty, NonNegativeAndLinearInGamma) {
    Rng rng(66);
    const auto c = gen_topology(TopologyKind::Ring, std::vector<int>{4, 5, 3}, 9);
    for (int t = 0; t < 100; ++t) {
        const auto seg = make_segment(testing::random_counts(10, 15, rng));
        const auto a = random_feasible(10, c, rng);
        const auto prev = random_feasible(10, c, rng);
        CostParams cp;
        const auto base = total(a, seg, &prev, c, cp);
        EXPECT_GE(base.e_inter, 0.0);
        EXPECT_GE(base.e_local, 0.0);
        EXPECT_GE(base.e_move, 0.0);
        const double k = 1 + rng.uniform01() * 3;
        cp.gamma2 = k;
        const auto scaled = total(a, seg, &prev, c, cp);
        EXPECT_TRUE(rel_close(scaled.e_total - base.e_total, (k - 1) * base.e_local));
    }
}

TEST(TotalProperty, EdgeCutConsistency) {
    // With unit remote cost, unit inter distances and only the inter term,
    // the objective is the edge cut of the segment's own graph.
    Rng rng(67);
    std::vector<Qpu> qpus{testing::line_qpu("a", 4), testing::line_qpu("b", 4), testing::line_qpu("c", 4)};
    const ClusterTopology c(qpus, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    CostParams cp;
    cp.gamma2 = 0;
    cp.gamma3 = 0;
    cp.remote_op_cost = 1;
    for (int t = 0; t < 100; ++t) {
        const auto seg = make_segment(testing::random_counts(10, 15, rng));
        const auto a = random_feasible(10, c, rng);
        const auto g = build_graph({seg}, 0.0, 10);
        EXPECT_TRUE(rel_close(total(a, seg, nullptr, c, cp).e_total, edge_cut(g, a)));
    }
}

TEST(TotalProperty, PriceScaling) {
    Rng rng(68);
    const auto c = gen_topology(TopologyKind::Line, std::vector<int>{4, 4}, 10);
    for (int t = 0; t < 100; ++t) {
        const auto seg = make_segment(testing::random_counts(8, 12, rng));
        const auto a = random_feasible(8, c, rng);
        const auto prev = random_feasible(8, c, rng);
        CostParams cp;
        const double k = 0.1 + rng.uniform01() * 5;
        CostParams scaled = cp;
        scaled.cx_cost *= k;
        scaled.swap_cost *= k;
        scaled.remote_op_cost *= k;
        scaled.teleport_cost *= k;
        EXPECT_TRUE(rel_close(total(a, seg, &prev, c, scaled).e_total, k * total(a, seg, &prev, c, cp).e_total));
    }
}

TEST(TotalProperty, RatioScalesOnlyRemoteTerms) {
    Rng rng(69);
    const auto c = gen_topology(TopologyKind::Ring, std::vector<int>{4, 4, 4}, 11);
    for (int t = 0; t < 50; ++t) {
        const auto seg = make_segment(testing::random_counts(10, 12, rng));
        const auto a = random_feasible(10, c, rng);
        const auto prev = random_feasible(10, c, rng);
        const auto r1 = total(a, seg, &prev, c, CostParams::with_ratio(1.0));
        for (double r : {2.0, 3.5, 5.0}) {
            const auto rr = total(a, seg, &prev, c, CostParams::with_ratio(r));
            EXPECT_DOUBLE_EQ(rr.e_local, r1.e_local);
            EXPECT_TRUE(rel_close(rr.e_inter, r * r1.e_inter));
            EXPECT_TRUE(rel_close(rr.e_move, r * r1.e_move));
        }
    }
}

class DeltaTest : public ::testing::Test {
protected:
    ClusterTopology cluster = gen_topology(TopologyKind::Ring, std::vector<int>{3, 4, 5}, 12);
    Segment seg;
    CostParams cp;
    void SetUp() override {
        Rng rng(70);
        seg = make_segment(testing::random_counts(9, 14, rng));
    }
};

TEST_F(DeltaTest, NullMoveIsZero) {
    const SegmentCostModel model(cluster, seg, cp, 9);
    const AnnealState st(model, random_placement(9, cluster, 1), nullptr);
    const Qubit q = 4;
    EXPECT_EQ(delta_total(st, Relocate{q, st.assignment().qpu_of[q]}), 0.0);
}

TEST_F(DeltaTest, InvalidMoves) {
    const SegmentCostModel model(cluster, seg, cp, 9);
    const AnnealState st(model, Assignment{{0, 0, 0, 1, 1, 1, 1, 2, 2}}, nullptr);
    // QPU 0 is full.
    EXPECT_THROW(delta_total(st, Relocate{3, 0}), ParameterError);
    EXPECT_THROW(delta_total(st, SwapQubits{0, 1}), ParameterError);
    EXPECT_NO_THROW(delta_total(st, SwapQubits{0, 3}));
}

TEST_F(DeltaTest, MoveThenInverseCancels) {
    Rng rng(71);
    const SegmentCostModel model(cluster, seg, cp, 9);
    const Assignment prev = random_placement(9, cluster, 3);
    AnnealState st(model, random_placement(9, cluster, 4), &prev);
    for (int t = 0; t < 200; ++t) {
        const Qubit a = static_cast<Qubit>(rng.below(9));
        const Qubit b = static_cast<Qubit>(rng.below(9));
        if (st.assignment().qpu_of[a] == st.assignment().qpu_of[b]) {
            continue;
        }
        const double d1 = delta_total(st, SwapQubits{a, b});
        st.apply(SwapQubits{a, b});
        const double d2 = delta_total(st, SwapQubits{a, b});
        EXPECT_NEAR(d1 + d2, 0.0, 1e-9 * std::max(1.0, std::abs(d1)));
    }
}

TEST_F(DeltaTest, MatchesRecompute) {
    Rng rng(72);
    for (int s = 0; s < 20; ++s) {
        const auto sg = make_segment(testing::random_counts(12, 20, rng));
        CostParams p;
        p.gamma1 = rng.uniform01();
        p.gamma2 = rng.uniform01();
        p.gamma3 = rng.uniform01();
        const SegmentCostModel model(cluster, sg, p, 12);
        const Assignment prev = random_placement(12, cluster, rng.next());
        AnnealState st(model, random_placement(12, cluster, rng.next()), &prev);
        for (int t = 0; t < 200; ++t) {
            Move m;
            if (rng.below(2)) {
                m = SwapQubits{static_cast<Qubit>(rng.below(12)), static_cast<Qubit>(rng.below(12))};
                if (st.assignment().qpu_of[std::get<SwapQubits>(m).a] ==
                    st.assignment().qpu_of[std::get<SwapQubits>(m).b]) {
                    continue;
                }
            } else {
                m = Relocate{static_cast<Qubit>(rng.below(12)), static_cast<QpuId>(rng.below(3))};
                const QpuId to = std::get<Relocate>(m).to;
                if (to != st.assignment().qpu_of[std::get<Relocate>(m).qubit] &&
                    st.loads()[to] >= cluster.qpu(to).comp_capacity) {
                    continue;
                }
            }
            const double before = total(st.assignment(), sg, &prev, cluster, p).e_total;
            const double d = delta_total(st, m);
            st.apply(m);
            const double after = total(st.assignment(), sg, &prev, cluster, p).e_total;
            ASSERT_TRUE(rel_close(d, after - before, 1e-9)) << d << " vs " << after - before;
            ASSERT_TRUE(rel_close(st.e_total(), after, 1e-9));
        }
    }
}

TEST(SegmentCostModel, CachedLocalCostMatchesFreshLayout) {
    Rng rng(73);
    const auto c = gen_topology(TopologyKind::Grid, std::vector<int>{6, 6}, 13);
    const auto seg = make_segment(testing::random_counts(8, 12, rng));
    const SegmentCostModel model(c, seg, CostParams{}, 8);
    const std::vector<Qubit> members{0, 2, 3, 5, 7};
    const double first = model.local_cost(1, members);
    EXPECT_EQ(model.local_cost(1, members), first);
    Assignment a{{1, 0, 1, 1, 0, 1, 0, 1}};
    EXPECT_DOUBLE_EQ(first, e_local(a, seg, c, CostParams{}) - model.local_cost(0, {1, 4, 6}));
}

}  // namespace
}  // namespace dqcmap
