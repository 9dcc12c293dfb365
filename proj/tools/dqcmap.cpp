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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dqcmap/benchmarks.hpp"
#include "dqcmap/errors.hpp"
#include "dqcmap/experiments.hpp"
#include "dqcmap/qasm.hpp"
#include "dqcmap/rng.hpp"

namespace {

using namespace dqcmap;

constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInternal = 4;

struct CircuitFlags {
    std::string circuit_file;
    std::string bench;
    int size = 0;
    int layers = 1;
};

struct TopologyFlags {
    std::string topology_file;
    std::string gen;
    std::vector<int> sizes;
};

struct TuningFlags {
    std::optional<int> window;
    std::optional<int> top_k;
    std::optional<double> theta;
    std::optional<double> lambda;
    std::optional<double> gamma1, gamma2, gamma3;
    std::optional<double> ratio;
    std::optional<int> iters;
    std::optional<double> t0;
    std::optional<double> cooling_rate;
    std::optional<int> partitions;
};

struct OutputFlags {
    std::string out;
    std::string format = "json";
};

std::optional<std::uint64_t> seed_flag;

std::uint64_t resolve_seed() {
    if (seed_flag) {
        return *seed_flag;
    }
    if (const char *env = std::getenv("DQCMAP_SEED")) {
        try {
            std::size_t used = 0;
            const std::string s(env);
            const unsigned long long v = std::stoull(s, &used);
            if (used != s.size() || s.empty() || s[0] == '-') {
                throw std::invalid_argument(s);
            }
            return v;
        } catch (const std::exception &) {
            throw ParameterError("DQCMAP_SEED must be a non-negative integer, got '" + std::string(env) + "'");
        }
    }
    return 0;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    out << text;
}

std::string stem(const std::string &path) {
    const auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.find_last_of('.');
    return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

Circuit make_bench(const CircuitFlags &f, std::uint64_t seed) {
    if (f.bench == "qft") {
        return gen_qft(f.size);
    }
    if (f.bench == "qaoa") {
        return gen_qaoa(f.size, f.layers, derive_seed(seed, "qaoa"));
    }
    if (f.bench == "adder") {
        return gen_adder(f.size);
    }
    throw ParameterError("unknown benchmark '" + f.bench + "'");
}

std::pair<Circuit, std::string> load_circuit(const CircuitFlags &f, std::uint64_t seed) {
    if (!f.circuit_file.empty()) {
        return {parse_qasm(read_file(f.circuit_file), stem(f.circuit_file)), f.circuit_file};
    }
    if (!f.bench.empty()) {
        return {make_bench(f, seed), "bench:" + f.bench};
    }
    throw ParameterError("one of --circuit or --bench is required");
}

std::pair<ClusterTopology, std::string> load_topology(const TopologyFlags &f, std::uint64_t seed) {
    if (!f.topology_file.empty()) {
        return {load_cluster(read_file(f.topology_file)), f.topology_file};
    }
    if (!f.gen.empty()) {
        if (f.sizes.empty()) {
            throw ParameterError("--gen needs --sizes");
        }
        return {gen_topology(parse_topology_kind(f.gen), f.sizes, derive_seed(seed, "topology")), "gen:" + f.gen};
    }
    throw ParameterError("one of --topology or --gen is required");
}

CompileOptions build_options(const TuningFlags &t, const LayeredCircuit &lc, std::uint64_t seed) {
    CompileOptions o;
    o.seed = seed;
    if (t.window || t.top_k || t.theta) {
        SegmentationParams sp = default_segmentation_params(lc);
        if (t.window) {
            sp.window = *t.window;
            sp.min_segment_len = *t.window;
        }
        if (t.top_k) {
            sp.top_k = *t.top_k;
        }
        if (t.theta) {
            sp.theta = *t.theta;
        }
        o.segmentation = sp;
    }
    o.lambda = t.lambda;
    o.partitions = t.partitions;
    if (t.ratio) {
        o.costs = CostParams::with_ratio(*t.ratio);
    }
    if (t.gamma1) {
        o.costs.gamma1 = *t.gamma1;
    }
    if (t.gamma2) {
        o.costs.gamma2 = *t.gamma2;
    }
    if (t.gamma3) {
        o.costs.gamma3 = *t.gamma3;
    }
    validate(o.costs);
    o.anneal.iters_per_segment = t.iters;
    o.anneal.t0 = t.t0;
    o.anneal.cooling_rate = t.cooling_rate;
    return o;
}

void add_circuit_flags(CLI::App *cmd, CircuitFlags &f) {
    auto *circuit = cmd->add_option("--circuit", f.circuit_file, "OpenQASM 2.0 input file");
    auto *bench = cmd->add_option("--bench", f.bench, "Generated benchmark")
                      ->check(CLI::IsMember({"qft", "qaoa", "adder"}));
    circuit->excludes(bench);
    cmd->add_option("--size", f.size, "Benchmark qubit count")->needs(bench);
    cmd->add_option("--layers", f.layers, "QAOA rounds")->needs(bench);
}

void add_topology_flags(CLI::App *cmd, TopologyFlags &f) {
    auto *file = cmd->add_option("--topology", f.topology_file, "Cluster description (JSON)");
    auto *gen = cmd->add_option("--gen", f.gen, "Generate a cluster with this link shape")
                    ->check(CLI::IsMember({"line", "ring", "grid", "heavy_hex_like"}));
    file->excludes(gen);
    cmd->add_option("--sizes", f.sizes, "QPU capacities, e.g. 6,6,8")->delimiter(',')->needs(gen);
}

void add_tuning_flags(CLI::App *cmd, TuningFlags &t) {
    cmd->add_option("--window", t.window, "Density window (layers)");
    cmd->add_option("--top-k", t.top_k, "Busy-qubit set size");
    cmd->add_option("--theta", t.theta, "Boundary similarity threshold");
    cmd->add_option("--lambda", t.lambda, "Segment decay coefficient");
    cmd->add_option("--partitions", t.partitions, "Number of QPUs to cluster onto");
    cmd->add_option("--gamma1", t.gamma1, "Weight of the inter-QPU term");
    cmd->add_option("--gamma2", t.gamma2, "Weight of the intra-QPU term");
    cmd->add_option("--gamma3", t.gamma3, "Weight of the movement term");
    cmd->add_option("--ratio", t.ratio, "Remote/teleport cost as a multiple of cx cost");
    cmd->add_option("--iters", t.iters, "Annealing iterations per segment");
    cmd->add_option("--t0", t.t0, "Initial annealing temperature");
    cmd->add_option("--cooling-rate", t.cooling_rate, "Cooling rate alpha");
}

void add_output_flags(CLI::App *cmd, OutputFlags &o, const std::string &default_format) {
    o.format = default_format;
    cmd->add_option("--out", o.out, "Output file (default stdout)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

std::vector<double> parse_ratios(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        try {
            std::size_t used = 0;
            double num = std::stod(item.substr(0, colon), &used);
            double den = 1.0;
            if (colon != std::string::npos) {
                den = std::stod(item.substr(colon + 1));
            }
            if (!(den > 0.0)) {
                throw std::invalid_argument(item);
            }
            out.push_back(num / den);
        } catch (const std::logic_error &) {
            throw ParameterError("bad ratio '" + item + "'");
        }
    }
    if (out.empty()) {
        throw ParameterError("--ratios is empty");
    }
    return out;
}

int run(int argc, char **argv) {
    CLI::App app{"Distributed quantum circuit mapper"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    app.add_option("--seed", seed_flag, "Top-level seed (falls back to DQCMAP_SEED)");

    CircuitFlags cf;
    TopologyFlags tf;
    TuningFlags tune;
    OutputFlags out;
    OutputFlags map_out;
    OutputFlags sweep_out;

    auto *map_cmd = app.add_subcommand("map", "Compile one circuit and report the plan");
    auto *ablate_cmd = app.add_subcommand("ablate", "Compare baseline, L1, L2 and L3 arms");
    auto *sweep_cmd = app.add_subcommand("sweep-ratio", "Re-compile across inter:intra cost ratios");
    for (auto *cmd : {map_cmd, ablate_cmd, sweep_cmd}) {
        cmd->add_option("--seed", seed_flag, "Top-level seed (falls back to DQCMAP_SEED)");
        add_circuit_flags(cmd, cf);
        add_topology_flags(cmd, tf);
        add_tuning_flags(cmd, tune);
    }
    add_output_flags(map_cmd, map_out, "json");
    add_output_flags(sweep_cmd, sweep_out, "csv");
    ablate_cmd->add_option("--out", out.out, "Output file (default stdout)");

    int repeats = 1;
    ablate_cmd->add_option("--repeats", repeats, "Seeds to run; medians are reported")
        ->check(CLI::Range(1, 1000));
    std::string ratios_text = "5,4,3,2,1";
    sweep_cmd->add_option("--ratios", ratios_text, "Comma-separated ratios, e.g. 5,4,3 or 5:1,1:1");

    auto *bench_cmd = app.add_subcommand("gen-bench", "Write a benchmark circuit as OpenQASM 2.0");
    bench_cmd->add_option("--seed", seed_flag, "Top-level seed (falls back to DQCMAP_SEED)");
    bench_cmd->add_option("--bench", cf.bench, "Benchmark family")
        ->required()
        ->check(CLI::IsMember({"qft", "qaoa", "adder"}));
    bench_cmd->add_option("--size", cf.size, "Qubit count")->required();
    bench_cmd->add_option("--layers", cf.layers, "QAOA rounds");
    bench_cmd->add_option("--out", out.out, "Output file (default stdout)");

    auto *topo_cmd = app.add_subcommand("gen-topology", "Write a generated cluster as JSON");
    topo_cmd->add_option("--seed", seed_flag, "Top-level seed (falls back to DQCMAP_SEED)");
    topo_cmd->add_option("--gen", tf.gen, "Link shape")
        ->required()
        ->check(CLI::IsMember({"line", "ring", "grid", "heavy_hex_like"}));
    topo_cmd->add_option("--sizes", tf.sizes, "QPU capacities, e.g. 6,6,8")->required()->delimiter(',');
    topo_cmd->add_option("--out", out.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInvalid;
    }

    const std::uint64_t seed = resolve_seed();

    if (bench_cmd->parsed()) {
        write_output(out.out, to_qasm(make_bench(cf, seed)));
        return 0;
    }
    if (topo_cmd->parsed()) {
        auto [cluster, source] = load_topology(tf, seed);
        write_output(out.out, serialize_cluster(cluster));
        return 0;
    }

    auto [circuit, circuit_source] = load_circuit(cf, seed);
    auto [cluster, topology_source] = load_topology(tf, seed);
    const LayeredCircuit lc(std::move(circuit));
    const CompileOptions opts = build_options(tune, lc, seed);
    RunMetadata meta{"", seed, circuit_source, topology_source};

    if (map_cmd->parsed()) {
        meta.command = "map";
        const MapResult result = run_map(lc, cluster, opts);
        write_output(map_out.out, map_out.format == "csv" ? plan_csv(result.plan)
                                                  : map_report_json(result, lc, cluster, opts, meta));
        return 0;
    }
    if (ablate_cmd->parsed()) {
        meta.command = "ablate";
        std::vector<AblationResult> runs;
        for (int r = 0; r < repeats; ++r) {
            CompileOptions o = opts;
            o.seed = seed + static_cast<std::uint64_t>(r);
            runs.push_back(run_ablation(lc, cluster, o));
        }
        write_output(out.out, ablation_report_json(runs, lc, cluster, opts, meta));
        return 0;
    }
    meta.command = "sweep-ratio";
    const auto rows = run_sweep_ratio(lc, cluster, opts, parse_ratios(ratios_text));
    write_output(sweep_out.out, sweep_out.format == "csv" ? sweep_csv(rows)
                                                          : sweep_report_json(rows, lc, cluster, opts, meta));
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const dqcmap::InfeasibleError &e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const dqcmap::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
