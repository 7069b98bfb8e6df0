#include "modcluster/multilevel.hpp"

#include <chrono>
#include <stdexcept>

#include "modcluster/contract.hpp"

namespace modcluster {

CoarsenerKind parse_coarsener(std::string_view name) {
    if (name == "ss") return CoarsenerKind::SingleStep;
    if (name == "ms") return CoarsenerKind::MultiStep;
    throw std::invalid_argument("unknown coarsener: " + std::string(name));
}

std::string_view to_string(CoarsenerKind kind) {
    return kind == CoarsenerKind::SingleStep ? "ss" : "ms";
}

namespace {

Clustering run_coarsener(const Graph& g, const CoarsenerConfig& cfg,
                         const MergeObserver& observer) {
    if (cfg.kind == CoarsenerKind::SingleStep)
        return single_step_greedy(g, cfg.prioritizer, observer);
    return multi_step_greedy(g, cfg.prioritizer, cfg.merge_fraction, observer);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

LevelHierarchy build_hierarchy(const Graph& g, const CoarsenerConfig& coarsener,
                               double reduction_factor) {
    if (!(reduction_factor > 0.0) || reduction_factor > 100.0)
        throw std::invalid_argument("reduction factor must be in (0, 100]");

    LevelHierarchy h;
    h.reduction_factor = reduction_factor;
    h.levels.push_back(g);
    while (true) {
        const Graph& level = h.levels.back();
        const double target =
            (1.0 - reduction_factor / 100.0) * static_cast<double>(level.vertex_count());
        bool merged_any = false;
        Clustering clustering = run_coarsener(level, coarsener, [&](const MergeEvent& ev) {
            merged_any = true;
            return static_cast<double>(ev.clusters_remaining) > target;
        });
        if (!merged_any) break;
        ContractResult next = contract(level, clustering);
        h.maps.push_back(std::move(next.vertex_map));
        h.levels.push_back(std::move(next.graph));
    }
    return h;
}

Clustering project(const Graph& fine_graph, const Clustering& coarse,
                   std::span<const VertexId> map) {
    if (map.size() != fine_graph.vertex_count())
        throw std::invalid_argument("projection map does not cover the fine graph");
    std::vector<ClusterId> labels(map.size());
    for (VertexId v = 0; v < map.size(); ++v) {
        if (map[v] >= coarse.vertex_count())
            throw std::invalid_argument("projection map image out of range");
        labels[v] = coarse.cluster_of(map[v]);
    }
    return Clustering(fine_graph, labels);
}

Clustering multi_level_cluster(const Graph& g, const CoarsenerConfig& coarsener,
                               RefinerKind refiner, double reduction_factor,
                               MultiLevelStats* stats) {
    const auto t0 = std::chrono::steady_clock::now();
    LevelHierarchy h = build_hierarchy(g, coarsener, reduction_factor);
    const double coarsen_ms = ms_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    Clustering clustering = Clustering::singletons(h.levels.back());
    for (std::size_t l = h.levels.size() - 1; l-- > 0;) {
        clustering = project(h.levels[l], clustering, h.maps[l]);
        refine(h.levels[l], clustering, refiner);
    }
    // Re-bind to the caller's graph: the hierarchy and its level-0 copy die
    // with this scope.
    clustering = Clustering(g, clustering.assignment());
    const double refine_ms = ms_since(t1);

    if (stats) {
        stats->level_count = h.level_count();
        stats->level_vertices.clear();
        for (const Graph& level : h.levels) stats->level_vertices.push_back(level.vertex_count());
        stats->coarsen_ms = coarsen_ms;
        stats->refine_ms = refine_ms;
    }
    return clustering;
}

}  // namespace modcluster
