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

#include "dqcmap/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dqcmap/errors.hpp"
#include "dqcmap/rng.hpp"

namespace dqcmap {

namespace {

void check_layer(const LayeredCircuit &lc, int l) {
    if (l < 1 || l > lc.depth()) {
        throw RangeError("layer " + std::to_string(l) + " outside 1.." + std::to_string(lc.depth()));
    }
}

// rho for every qubit and layer, row-major [q][l-1].
class DensityTable {
public:
    explicit DensityTable(const LayeredCircuit &lc) : depth_(lc.depth()), rho_(lc.n_qubits() * lc.depth()) {
        for (Qubit q = 0; q < lc.n_qubits(); ++q) {
            for (int l = 1; l <= depth_; ++l) {
                rho_[static_cast<std::size_t>(q) * depth_ + l - 1] = density(lc, q, l);
            }
        }
    }

    double windowed(Qubit q, int l, int w) const {
        const int lo = std::max(1, l - w);
        const int hi = std::min(depth_, l + w);
        double sum = 0.0;
        for (int i = lo; i <= hi; ++i) {
            sum += rho_[static_cast<std::size_t>(q) * depth_ + i - 1];
        }
        return sum / (hi - lo + 1);
    }

    std::vector<Qubit> top_k(int n_qubits, int l, int w, int k) const {
        std::vector<double> score(n_qubits);
        for (Qubit q = 0; q < n_qubits; ++q) {
            score[q] = windowed(q, l, w);
        }
        std::vector<Qubit> order(n_qubits);
        std::iota(order.begin(), order.end(), 0);
        std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Qubit a, Qubit b) {
            return score[a] != score[b] ? score[a] > score[b] : a < b;
        });
        order.resize(k);
        std::sort(order.begin(), order.end());
        return order;
    }

private:
    int depth_;
    std::vector<double> rho_;
};

}  // namespace

SegmentationParams default_segmentation_params(const LayeredCircuit &lc) {
    SegmentationParams p;
    p.window = std::max(1, (lc.depth() + 19) / 20);
    p.top_k = std::min(lc.n_qubits(), std::max(2, (lc.n_qubits() + 3) / 4));
    p.theta = 0.5;
    p.min_segment_len = p.window;
    return p;
}

void validate(const SegmentationParams &params, int n_qubits) {
    if (params.window < 1) {
        throw ParameterError("window must be >= 1");
    }
    if (params.top_k < 1 || params.top_k > n_qubits) {
        throw ParameterError("top_k must be in 1.." + std::to_string(n_qubits));
    }
    if (!(params.theta >= 0.0 && params.theta <= 1.0)) {
        throw ParameterError("theta must be in [0, 1]");
    }
    if (params.min_segment_len < 1) {
        throw ParameterError("min_segment_len must be >= 1");
    }
}

double density(const LayeredCircuit &lc, Qubit q, int l) {
    check_layer(lc, l);
    return static_cast<double>(lc.cumulative_two_qubit(q, l)) / l;
}

double windowed_density(const LayeredCircuit &lc, Qubit q, int l, int w) {
    check_layer(lc, l);
    if (w < 0) {
        throw ParameterError("window must be non-negative");
    }
    const int lo = std::max(1, l - w);
    const int hi = std::min(lc.depth(), l + w);
    double sum = 0.0;
    for (int i = lo; i <= hi; ++i) {
        sum += density(lc, q, i);
    }
    return sum / (hi - lo + 1);
}

std::vector<Qubit> top_k_set(const LayeredCircuit &lc, int l, const SegmentationParams &params) {
    check_layer(lc, l);
    validate(params, lc.n_qubits());
    return DensityTable(lc).top_k(lc.n_qubits(), l, params.window, params.top_k);
}

double jaccard(std::vector<Qubit> a, std::vector<Qubit> b) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    if (a.empty() && b.empty()) {
        return 1.0;
    }
    std::vector<Qubit> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    const std::size_t inter = common.size();
    const std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<Segment> segments_from_starts(const LayeredCircuit &lc, const std::vector<int> &starts) {
    if (starts.empty() || starts.front() != 1) {
        throw ParameterError("segment starts must begin at layer 1");
    }
    std::vector<Segment> out;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        Segment s;
        s.index = static_cast<int>(i) + 1;
        s.from_layer = starts[i];
        s.to_layer = i + 1 < starts.size() ? starts[i + 1] - 1 : lc.depth();
        if (s.to_layer < s.from_layer) {
            throw ParameterError("segment starts must be strictly increasing and within the circuit");
        }
        s.interactions = count_interactions(lc, s.from_layer, s.to_layer);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Segment> segment(const LayeredCircuit &lc, const SegmentationParams &params) {
    validate(params, lc.n_qubits());
    if (lc.depth() == 0) {
        throw ParameterError("cannot segment an empty circuit");
    }
    const DensityTable table(lc);
    std::vector<int> starts{1};
    auto previous = table.top_k(lc.n_qubits(), 1, params.window, params.top_k);
    for (int l = 2; l <= lc.depth(); ++l) {
        auto current = table.top_k(lc.n_qubits(), l, params.window, params.top_k);
        if (jaccard(current, previous) < params.theta && l - starts.back() >= params.min_segment_len) {
            starts.push_back(l);
        }
        previous = std::move(current);
    }
    return segments_from_starts(lc, starts);
}

std::vector<Segment> random_segment(const LayeredCircuit &lc, int n_segments, std::uint64_t seed) {
    if (n_segments < 1 || n_segments > lc.depth()) {
        throw ParameterError("n_segments must be in 1.." + std::to_string(lc.depth()));
    }
    std::vector<int> candidates(lc.depth() - 1);
    std::iota(candidates.begin(), candidates.end(), 2);
    Rng rng(seed);
    // Partial Fisher-Yates: the first n_segments-1 entries become the draw.
    for (int i = 0; i < n_segments - 1; ++i) {
        std::size_t j = i + rng.below(candidates.size() - i);
        std::swap(candidates[i], candidates[j]);
    }
    std::vector<int> starts{1};
    starts.insert(starts.end(), candidates.begin(), candidates.begin() + (n_segments - 1));
    std::sort(starts.begin(), starts.end());
    return segments_from_starts(lc, starts);
}

}  // namespace dqcmap
