#pragma once

#include "modcluster/clustering.hpp"
#include "modcluster/graph.hpp"

namespace modcluster {

/// Largest vertex count accepted by the exhaustive solver.
inline constexpr std::size_t kExactMaxVertices = 12;

struct ExactResult {
    Clustering clustering;
    double modularity;
};

/// Exhaustive maximum-modularity search over all set partitions of V
/// (Bell-number enumeration via restricted growth strings). Ties resolve to
/// the first maximizing partition in enumeration order. Throws if the graph
/// has more than kExactMaxVertices vertices or zero total weight.
ExactResult exact_max_modularity(const Graph& g);

}  // namespace modcluster
