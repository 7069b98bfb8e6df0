#pragma once

#include <vector>

#include "modcluster/clustering.hpp"
#include "modcluster/graph.hpp"

namespace modcluster {

struct ContractResult {
    Graph graph;                       // one vertex per cluster
    std::vector<VertexId> vertex_map;  // fine vertex -> coarse vertex
};

/// Builds the quotient graph of a clustering. The coarse weight between two
/// cluster-vertices is f(P,Q); the intra weight f(P,P) becomes a self-edge,
/// so coarse degrees equal cluster degrees and modularity is preserved under
/// projection. Coarse ids are assigned densely in order of first appearance
/// over fine vertex ids.
ContractResult contract(const Graph& g, const Clustering& clustering);

}  // namespace modcluster
