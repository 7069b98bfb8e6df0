#include "modcluster/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace modcluster {

namespace {

std::string trim_copy(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string format_double(double x) {
    std::ostringstream ss;
    ss << x;
    return ss.str();
}

bool same_config(const RunConfig& a, const RunConfig& b) {
    return a.coarsener.kind == b.coarsener.kind &&
           a.coarsener.prioritizer == b.coarsener.prioritizer &&
           a.coarsener.merge_fraction == b.coarsener.merge_fraction &&
           a.refiner == b.refiner && a.reduction_factor == b.reduction_factor;
}

BenchmarkRow run_one(const ManifestEntry& entry, const InputGraph& input,
                     const RunConfig& config, bool warmup) {
    BenchmarkRow row;
    row.graph = entry.name;
    row.config = config;
    row.vertices = input.graph.vertex_count();
    row.edges = input.graph.edge_count();
    try {
        if (warmup)
            multi_level_cluster(input.graph, config.coarsener, config.refiner,
                                config.reduction_factor);
        MultiLevelStats stats;
        const auto t0 = std::chrono::steady_clock::now();
        Clustering clustering = multi_level_cluster(input.graph, config.coarsener,
                                                    config.refiner, config.reduction_factor,
                                                    &stats);
        row.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        row.modularity = modularity(input.graph, clustering);
        row.levels = stats.level_count;
        row.clusters = clustering.cluster_count();
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::string config_label(const RunConfig& config) {
    std::ostringstream ss;
    ss << to_string(config.coarsener.kind);
    if (config.coarsener.kind == CoarsenerKind::MultiStep)
        ss << format_double(config.coarsener.merge_fraction);
    ss << '-' << to_string(config.coarsener.prioritizer) << '+' << to_string(config.refiner)
       << '@' << format_double(config.reduction_factor);
    return ss.str();
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<ManifestEntry> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim_copy(line);
        if (line.empty()) continue;
        std::istringstream ss{line};
        ManifestEntry entry;
        std::string fmt, flag, pathstr;
        if (!(ss >> entry.name >> pathstr >> fmt))
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected '<name> <path> <format> [uw]'");
        entry.format = parse_format(fmt);
        entry.path = pathstr;
        if (entry.path.is_relative()) entry.path = path.parent_path() / entry.path;
        if (ss >> flag) {
            if (flag != "uw")
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                         ": unknown flag '" + flag + "'");
            entry.unweighted = true;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<RunConfig> read_config_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<RunConfig> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim_copy(line);
        if (line.empty()) continue;
        std::istringstream ss{line};
        std::string coarsener, prioritizer, refiner;
        double rf = 0.0;
        if (!(ss >> coarsener >> prioritizer >> refiner >> rf))
            throw std::runtime_error(
                path.string() + ":" + std::to_string(line_no) +
                ": expected '<ss|ms> <prioritizer> <refiner> <reduction_factor> [merge_fraction]'");
        RunConfig cfg;
        cfg.coarsener.kind = parse_coarsener(coarsener);
        cfg.coarsener.prioritizer = parse_prioritizer(prioritizer);
        cfg.refiner = parse_refiner(refiner);
        cfg.reduction_factor = rf;
        double mf = 0.0;
        if (ss >> mf) {
            if (cfg.coarsener.kind != CoarsenerKind::MultiStep)
                throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                         ": merge fraction given for a single-step config");
            cfg.coarsener.merge_fraction = mf;
        } else if (cfg.coarsener.kind == CoarsenerKind::MultiStep) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": multi-step config requires a merge fraction");
        }
        out.push_back(cfg);
    }
    return out;
}

std::vector<ConfigSummary> BenchmarkReport::summaries() const {
    std::vector<ConfigSummary> out;
    for (const BenchmarkRow& row : rows) {
        if (row.failed) continue;
        auto it = std::find_if(out.begin(), out.end(), [&](const ConfigSummary& s) {
            return same_config(s.config, row.config);
        });
        if (it == out.end()) {
            out.push_back({row.config, 0, 0.0, 0.0});
            it = out.end() - 1;
        }
        ++it->graphs;
        it->mean_modularity += row.modularity;
        it->mean_runtime_ms += row.runtime_ms;
    }
    for (ConfigSummary& s : out) {
        if (s.graphs > 0) {
            s.mean_modularity /= static_cast<double>(s.graphs);
            s.mean_runtime_ms /= static_cast<double>(s.graphs);
        }
    }
    return out;
}

BenchmarkReport run_benchmark(const std::vector<ManifestEntry>& manifest,
                              const std::vector<RunConfig>& configs,
                              const BenchmarkOptions& options) {
    BenchmarkReport report;
    // Parse each graph once, outside any timed region.
    std::vector<InputGraph> inputs;
    std::vector<std::string> load_errors(manifest.size());
    inputs.reserve(manifest.size());
    for (const ManifestEntry& entry : manifest) {
        ReadOptions ropts;
        ropts.unweighted = entry.unweighted;
        try {
            inputs.push_back(read_graph(entry.path, entry.format, ropts));
        } catch (const std::exception& e) {
            inputs.push_back({});
            load_errors[inputs.size() - 1] = e.what();
        }
    }

    report.rows.resize(manifest.size() * configs.size());
    auto run_cell = [&](std::size_t gi, std::size_t ci) {
        BenchmarkRow& row = report.rows[gi * configs.size() + ci];
        if (!load_errors[gi].empty()) {
            row.graph = manifest[gi].name;
            row.config = configs[ci];
            row.failed = true;
            row.error = load_errors[gi];
            return;
        }
        if (options.jobs > 1) {
            // Each parallel run works on its own copy of the graph.
            InputGraph own{inputs[gi].graph, inputs[gi].labels};
            row = run_one(manifest[gi], own, configs[ci], options.warmup);
        } else {
            row = run_one(manifest[gi], inputs[gi], configs[ci], options.warmup);
        }
    };

    const std::size_t total = manifest.size() * configs.size();
    if (options.jobs <= 1 || total <= 1) {
        for (std::size_t i = 0; i < total; ++i) run_cell(i / configs.size(), i % configs.size());
    } else {
        std::atomic<std::size_t> next{0};
        const unsigned workers = std::min<unsigned>(options.jobs, static_cast<unsigned>(total));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= total) return;
                    run_cell(i / configs.size(), i % configs.size());
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }
    return report;
}

void write_csv(const BenchmarkReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "graph,coarsener,merge_fraction,prioritizer,refiner,reduction_factor,n,m,"
           "modularity,runtime_ms,clusters\n";
    for (const BenchmarkRow& row : report.rows) {
        const RunConfig& c = row.config;
        out << row.graph << ',' << to_string(c.coarsener.kind) << ',';
        if (c.coarsener.kind == CoarsenerKind::MultiStep)
            out << format_double(c.coarsener.merge_fraction);
        else
            out << 0;
        out << ',' << to_string(c.coarsener.prioritizer) << ',' << to_string(c.refiner) << ','
            << format_double(c.reduction_factor) << ',';
        if (row.failed) {
            out << ",,,,\n";
            continue;
        }
        out << row.vertices << ',' << row.edges << ',';
        const auto old = out.precision(9);
        out << std::fixed << row.modularity;
        out.unsetf(std::ios::floatfield);
        out.precision(old);
        out << ',' << format_double(row.runtime_ms) << ',' << row.clusters << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace modcluster
