#include <chrono>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "modcluster/benchmark.hpp"
#include "modcluster/exact.hpp"
#include "modcluster/io.hpp"
#include "modcluster/multilevel.hpp"

namespace {

using namespace modcluster;

struct ClusterArgs {
    std::string input;
    std::string format = "edgelist";
    std::string coarsen = "ss";
    std::optional<double> merge_fraction;
    std::string prioritizer = "sig";
    std::string refiner = "fast";
    double reduction_factor = 50.0;
    std::string output;
    bool drop_self_edges = false;
};

int cmd_cluster(const ClusterArgs& args) {
    RunConfig config;
    config.coarsener.kind = parse_coarsener(args.coarsen);
    config.coarsener.prioritizer = parse_prioritizer(args.prioritizer);
    if (config.coarsener.kind == CoarsenerKind::MultiStep)
        config.coarsener.merge_fraction = *args.merge_fraction;
    config.refiner = parse_refiner(args.refiner);
    config.reduction_factor = args.reduction_factor;

    ReadOptions ropts;
    ropts.drop_self_edges = args.drop_self_edges;
    const InputGraph input = read_graph(args.input, parse_format(args.format), ropts);
    std::fprintf(stdout, "graph %s n=%zu m=%zu\n", args.input.c_str(),
                 input.graph.vertex_count(), input.graph.edge_count());

    MultiLevelStats stats;
    const auto t0 = std::chrono::steady_clock::now();
    const Clustering clustering = multi_level_cluster(
        input.graph, config.coarsener, config.refiner, config.reduction_factor, &stats);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::fprintf(stdout, "modularity %.9f\n", modularity(input.graph, clustering));
    std::fprintf(stdout, "clusters %zu\n", clustering.cluster_count());
    std::fprintf(stdout, "levels %zu\n", stats.level_count);
    std::fprintf(stdout, "runtime_ms %.3f\n", ms);
    if (!args.output.empty()) write_clustering(clustering, input.labels, args.output);
    return 0;
}

int cmd_benchmark(const std::string& manifest_path, const std::string& configs_path,
                  const std::string& out_path, unsigned jobs, bool warmup) {
    const auto manifest = read_manifest(manifest_path);
    const auto configs = read_config_matrix(configs_path);
    BenchmarkOptions options;
    options.jobs = jobs;
    options.warmup = warmup;
    const BenchmarkReport report = run_benchmark(manifest, configs, options);
    write_csv(report, out_path);

    for (const BenchmarkRow& row : report.rows)
        if (row.failed)
            std::fprintf(stderr, "error: %s [%s]: %s\n", row.graph.c_str(),
                         config_label(row.config).c_str(), row.error.c_str());
    std::fprintf(stdout, "%-28s %7s %12s %14s\n", "config", "graphs", "mean_Q", "mean_ms");
    for (const ConfigSummary& s : report.summaries())
        std::fprintf(stdout, "%-28s %7zu %12.6f %14.3f\n", config_label(s.config).c_str(),
                     s.graphs, s.mean_modularity, s.mean_runtime_ms);
    std::fprintf(stdout, "wrote %s (%zu rows)\n", out_path.c_str(), report.rows.size());
    return 0;
}

int cmd_oracle(const std::string& input_path, const std::string& format,
               const std::string& output) {
    const InputGraph input = read_graph(input_path, parse_format(format));
    const ExactResult best = exact_max_modularity(input.graph);
    std::fprintf(stdout, "modularity %.9f\n", best.modularity);
    std::fprintf(stdout, "clusters %zu\n", best.clustering.cluster_count());
    if (!output.empty()) write_clustering(best.clustering, input.labels, output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modularity graph clustering via greedy coarsening and multi-level refinement"};
    app.require_subcommand(1);

    ClusterArgs cargs;
    CLI::App* cluster = app.add_subcommand("cluster", "cluster one graph and print its modularity");
    cluster->add_option("--input", cargs.input, "graph file")->required();
    cluster->add_option("--format", cargs.format, "edgelist|pajek")
        ->check(CLI::IsMember({"edgelist", "pajek"}));
    cluster->add_option("--coarsen", cargs.coarsen, "ss|ms")
        ->check(CLI::IsMember({"ss", "ms"}));
    cluster->add_option("--merge-fraction", cargs.merge_fraction,
                        "percent of improving pairs merged per round (ms only)");
    cluster->add_option("--prioritizer", cargs.prioritizer, "mi|wd|sig|da|hn|he")
        ->check(CLI::IsMember({"mi", "wd", "sig", "da", "hn", "he"}));
    cluster->add_option("--refine", cargs.refiner, "none|fast|complete|kl")
        ->check(CLI::IsMember({"none", "fast", "complete", "kl"}));
    cluster->add_option("--reduction-factor", cargs.reduction_factor,
                        "percent cluster-count drop per recorded level; 100 = single level");
    cluster->add_option("--output", cargs.output, "write the clustering to this file");
    cluster->add_flag("--drop-self-edges", cargs.drop_self_edges, "ignore self-edges on load");

    std::string manifest_path, configs_path, out_path;
    unsigned jobs = 1;
    bool warmup = false;
    CLI::App* benchmark = app.add_subcommand("benchmark", "run a config matrix over a graph set");
    benchmark->add_option("--manifest", manifest_path, "graph manifest file")->required();
    benchmark->add_option("--configs", configs_path, "config matrix file")->required();
    benchmark->add_option("--out", out_path, "output CSV path")->required();
    benchmark->add_option("--jobs", jobs, "parallel worker threads");
    benchmark->add_flag("--warmup", warmup, "one unmeasured run before each timed run");

    std::string oracle_input, oracle_format = "edgelist", oracle_output;
    CLI::App* oracle = app.add_subcommand("oracle", "exact maximum modularity (<= 12 vertices)");
    oracle->add_option("--input", oracle_input, "graph file")->required();
    oracle->add_option("--format", oracle_format, "edgelist|pajek")
        ->check(CLI::IsMember({"edgelist", "pajek"}));
    oracle->add_option("--output", oracle_output, "write the optimal clustering to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors exit 1
    }

    try {
        if (cluster->parsed()) {
            if (cargs.coarsen == "ms" && !cargs.merge_fraction) {
                std::fprintf(stderr, "error: --coarsen ms requires --merge-fraction\n");
                return 1;
            }
            if (cargs.coarsen == "ss" && cargs.merge_fraction) {
                std::fprintf(stderr, "error: --merge-fraction applies only to --coarsen ms\n");
                return 1;
            }
            return cmd_cluster(cargs);
        }
        if (benchmark->parsed())
            return cmd_benchmark(manifest_path, configs_path, out_path, jobs, warmup);
        if (oracle->parsed()) return cmd_oracle(oracle_input, oracle_format, oracle_output);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
