#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "modcluster/clustering.hpp"
#include "modcluster/coarsening.hpp"
#include "modcluster/graph.hpp"
#include "modcluster/refinement.hpp"

namespace modcluster {

enum class CoarsenerKind { SingleStep, MultiStep };

CoarsenerKind parse_coarsener(std::string_view name);
std::string_view to_string(CoarsenerKind kind);

struct CoarsenerConfig {
    CoarsenerKind kind = CoarsenerKind::SingleStep;
    PrioritizerKind prioritizer = PrioritizerKind::Sig;
    double merge_fraction = 0.0;  // percent, multi-step only
};

/// Coarsening levels recorded whenever the live cluster count has dropped by
/// reduction_factor percent of the level's vertex count. levels[0] is the
/// input graph; maps[l] sends a level-l vertex to its level-l+1 image.
struct LevelHierarchy {
    std::vector<Graph> levels;
    std::vector<std::vector<VertexId>> maps;
    double reduction_factor = 100.0;

    std::size_t level_count() const { return levels.size(); }
};

/// Runs the coarsener per level until the cluster count falls to
/// (1 - rf/100) of the level's vertex count (or the coarsener exhausts its
/// improving merges), contracts, and repeats until a pass merges nothing.
LevelHierarchy build_hierarchy(const Graph& g, const CoarsenerConfig& coarsener,
                               double reduction_factor);

/// Pulls a clustering of the coarse level back to the fine level: each fine
/// vertex adopts its coarse image's cluster. Modularity is unchanged.
Clustering project(const Graph& fine_graph, const Clustering& coarse,
                   std::span<const VertexId> map);

struct MultiLevelStats {
    std::size_t level_count = 0;
    std::vector<std::size_t> level_vertices;
    double coarsen_ms = 0.0;  // hierarchy construction, contraction included
    double refine_ms = 0.0;   // refinement across all levels
};

/// Full pipeline: build the hierarchy, start from singletons on the coarsest
/// level, then project-and-refine down to the input graph.
Clustering multi_level_cluster(const Graph& g, const CoarsenerConfig& coarsener,
                               RefinerKind refiner, double reduction_factor,
                               MultiLevelStats* stats = nullptr);

}  // namespace modcluster
