#pragma once

#include <string_view>

#include "modcluster/clustering.hpp"
#include "modcluster/graph.hpp"

namespace modcluster {

enum class RefinerKind { None, FastGreedy, CompleteGreedy, KernighanLin };

RefinerKind parse_refiner(std::string_view name);
std::string_view to_string(RefinerKind kind);

struct MoveProposal {
    VertexId vertex;
    ClusterId target;  // kNewCluster for a freshly opened cluster
    double gain;       // delta Q of applying the move; may be <= 0
};

/// Best move of v over all clusters adjacent to v plus a new cluster.
/// Equal gains prefer the lowest target cluster id, with the new-cluster
/// option ordered last.
MoveProposal best_move_for_vertex(const Graph& g, const Clustering& clustering, VertexId v);

/// Applies the globally best positive-gain move until none remains.
void complete_greedy_refine(const Graph& g, Clustering& clustering);

/// Sweeps all vertices (sorted by increasing number of edges), applying each
/// vertex's best move when its gain is positive; repeats until a sweep
/// applies nothing.
void fast_greedy_refine(const Graph& g, Clustering& clustering);

/// Kernighan-Lin local search: the inner pass applies best moves of unmoved
/// vertices regardless of sign, tracks the best clustering seen, and aborts
/// after 10*log2|V| moves without a new peak; the outer loop restarts from
/// the peak until it stops improving. Never returns a worse clustering.
void kernighan_lin_refine(const Graph& g, Clustering& clustering);

void refine(const Graph& g, Clustering& clustering, RefinerKind kind);

}  // namespace modcluster
