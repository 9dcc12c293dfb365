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
#include <vector>

#include "dqcmap/circuit.hpp"

namespace dqcmap {

struct SegmentationParams {
    int window = 1;       // w: half-width of the density averaging window, in layers
    int top_k = 2;        // k: size of the most-active qubit set
    double theta = 0.5;   // Jaccard threshold below which a new segment opens
    int min_segment_len = 1;
};

/// w = max(1, ceil(depth/20)), k = max(2, ceil(n/4)) capped at n,
/// theta = 0.5, min_segment_len = w.
SegmentationParams default_segmentation_params(const LayeredCircuit &lc);

/// Throws ParameterError unless w >= 1, 1 <= k <= n_qubits, 0 <= theta <= 1
/// and min_segment_len >= 1.
void validate(const SegmentationParams &params, int n_qubits);

/// Contiguous layer interval [from_layer, to_layer] with its pair counts.
struct Segment {
    int index = 1;  // 1-based position in the segment list
    int from_layer = 1;
    int to_layer = 1;
    InteractionCount interactions;

    int length() const {
        return to_layer - from_layer + 1;
    }
    bool operator==(const Segment &) const = default;
};

/// rho_q(l) = D_q(l) / l.
double density(const LayeredCircuit &lc, Qubit q, int l);

/// Mean of rho_q(i) over i in [max(1, l-w), min(depth, l+w)], dividing by the
/// number of terms actually summed.
double windowed_density(const LayeredCircuit &lc, Qubit q, int l, int w);

/// The k qubits with the largest windowed density at layer l, ties to the
/// lower index, returned in ascending qubit order.
std::vector<Qubit> top_k_set(const LayeredCircuit &lc, int l, const SegmentationParams &params);

/// |a & b| / |a | b|; 1 when both are empty. Inputs need not be sorted.
double jaccard(std::vector<Qubit> a, std::vector<Qubit> b);

/// Pattern segmentation: a new segment opens before layer l when
/// J(S_l, S_{l-1}) < theta and the open segment already spans at least
/// min_segment_len layers.
std::vector<Segment> segment(const LayeredCircuit &lc, const SegmentationParams &params);

/// n_segments contiguous segments whose start layers (other than layer 1) are
/// drawn uniformly without replacement from 2..depth.
std::vector<Segment> random_segment(const LayeredCircuit &lc, int n_segments, std::uint64_t seed);

/// Builds segments from sorted start layers; starts must begin with 1.
std::vector<Segment> segments_from_starts(const LayeredCircuit &lc, const std::vector<int> &starts);

}  // namespace dqcmap
