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

#include "dqcmap/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "dqcmap/errors.hpp"
#include "dqcmap/rng.hpp"

namespace dqcmap {

Circuit gen_qft(int n) {
    if (n < 2) {
        throw ParameterError("qft needs at least 2 qubits");
    }
    Circuit c(n, "qft_" + std::to_string(n));
    for (int j = 0; j < n; ++j) {
        c.gate("h", {j});
        for (int k = j + 1; k < n; ++k) {
            c.gate("cp", {k, j}, {std::numbers::pi / std::ldexp(1.0, k - j)});
        }
    }
    for (int i = 0; i < n / 2; ++i) {
        c.gate("swap", {i, n - 1 - i});
    }
    return c;
}

namespace {

// Configuration-model sampling with rejection of loops and multi-edges.
std::vector<std::pair<int, int>> random_3_regular(int n, Rng &rng) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v) {
            stubs.insert(stubs.end(), 3, v);
        }
        rng.shuffle(stubs);
        std::set<std::pair<int, int>> edges;
        bool ok = true;
        for (std::size_t i = 0; i < stubs.size(); i += 2) {
            auto e = std::minmax(stubs[i], stubs[i + 1]);
            if (e.first == e.second || !edges.insert(e).second) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return {edges.begin(), edges.end()};
        }
    }
    throw ParameterError("could not sample a simple 3-regular graph");
}

void ccx(Circuit &c, int a, int b, int t) {
    c.gate("h", {t});
    c.gate("cx", {b, t});
    c.gate("tdg", {t});
    c.gate("cx", {a, t});
    c.gate("t", {t});
    c.gate("cx", {b, t});
    c.gate("tdg", {t});
    c.gate("cx", {a, t});
    c.gate("t", {b});
    c.gate("t", {t});
    c.gate("h", {t});
    c.gate("cx", {a, b});
    c.gate("t", {a});
    c.gate("tdg", {b});
    c.gate("cx", {a, b});
}

void maj(Circuit &c, int x, int y, int z) {
    c.gate("cx", {z, y});
    c.gate("cx", {z, x});
    ccx(c, x, y, z);
}

void uma(Circuit &c, int x, int y, int z) {
    ccx(c, x, y, z);
    c.gate("cx", {z, x});
    c.gate("cx", {x, y});
}

}  // namespace

Circuit gen_qaoa(int n, int p_layers, std::uint64_t seed) {
    if (n < 4 || n % 2 != 0) {
        throw ParameterError("qaoa needs an even qubit count of at least 4");
    }
    if (p_layers < 1) {
        throw ParameterError("qaoa needs at least one layer");
    }
    Rng rng(seed);
    const auto edges = random_3_regular(n, rng);
    Circuit c(n, "qaoa_" + std::to_string(n));
    for (int q = 0; q < n; ++q) {
        c.gate("h", {q});
    }
    for (int layer = 0; layer < p_layers; ++layer) {
        const double gamma = rng.uniform01() * std::numbers::pi;
        const double beta = rng.uniform01() * std::numbers::pi;
        for (auto [u, v] : edges) {
            c.gate("cx", {u, v});
            c.gate("rz", {v}, {2.0 * gamma});
            c.gate("cx", {u, v});
        }
        for (int q = 0; q < n; ++q) {
            c.gate("rx", {q}, {2.0 * beta});
        }
    }
    return c;
}

Circuit gen_adder(int n) {
    if (n < 4 || n % 2 != 0) {
        throw ParameterError("adder needs an even qubit count of at least 4");
    }
    const int bits = (n - 2) / 2;
    const int cin = 0;
    auto a = [&](int i) { return 1 + i; };
    auto b = [&](int i) { return 1 + bits + i; };
    const int cout = n - 1;

    Circuit c(n, "adder_n" + std::to_string(n));
    maj(c, cin, b(0), a(0));
    for (int i = 1; i < bits; ++i) {
        maj(c, a(i - 1), b(i), a(i));
    }
    c.gate("cx", {a(bits - 1), cout});
    for (int i = bits - 1; i >= 1; --i) {
        uma(c, a(i - 1), b(i), a(i));
    }
    uma(c, cin, b(0), a(0));
    return c;
}

}  // namespace dqcmap
