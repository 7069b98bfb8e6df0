#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "modcluster/io.hpp"
#include "modcluster/multilevel.hpp"

namespace modcluster {

/// One point of the clustering design space: coarsener (with merge fraction
/// and prioritizer), refiner, and reduction factor.
struct RunConfig {
    CoarsenerConfig coarsener;
    RefinerKind refiner = RefinerKind::FastGreedy;
    double reduction_factor = 50.0;
};

/// Short label like "ss-sig+fast@50" or "ms5-mi+none@100".
std::string config_label(const RunConfig& config);

struct ManifestEntry {
    std::string name;
    std::filesystem::path path;
    GraphFormat format = GraphFormat::EdgeList;
    bool unweighted = false;  // strip weights and self-edges at load
};

/// Manifest lines: "<name> <path> <edgelist|pajek> [uw]", '#' comments.
/// Relative paths resolve against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

/// Config lines: "<ss|ms> <prioritizer> <refiner> <reduction_factor>
/// [merge_fraction]", '#' comments; merge_fraction is required for ms.
std::vector<RunConfig> read_config_matrix(const std::filesystem::path& path);

struct BenchmarkRow {
    std::string graph;
    RunConfig config;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    double modularity = 0.0;
    double runtime_ms = 0.0;
    std::size_t levels = 0;
    std::size_t clusters = 0;
    bool failed = false;
    std::string error;
};

struct ConfigSummary {
    RunConfig config;
    std::size_t graphs = 0;
    double mean_modularity = 0.0;
    double mean_runtime_ms = 0.0;
};

struct BenchmarkReport {
    std::vector<BenchmarkRow> rows;  // graph-major, config-minor order

    std::vector<ConfigSummary> summaries() const;
};

struct BenchmarkOptions {
    unsigned jobs = 1;
    bool warmup = false;  // one unmeasured run before the timed one
};

/// Runs every config on every graph. Graph parsing happens outside the
/// timed region; per-run failures become error rows and the harness
/// continues. With jobs > 1, (graph, config) runs execute on worker threads
/// and each run owns its own copy of the graph.
BenchmarkReport run_benchmark(const std::vector<ManifestEntry>& manifest,
                              const std::vector<RunConfig>& configs,
                              const BenchmarkOptions& options = {});

/// CSV schema: graph,coarsener,merge_fraction,prioritizer,refiner,
/// reduction_factor,n,m,modularity,runtime_ms,clusters. Error rows leave the
/// result columns empty.
void write_csv(const BenchmarkReport& report, const std::filesystem::path& path);

}  // namespace modcluster
