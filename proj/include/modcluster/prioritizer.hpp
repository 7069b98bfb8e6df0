#pragma once

#include <string>
#include <string_view>

#include "modcluster/clustering.hpp"
#include "modcluster/graph.hpp"

namespace modcluster {

/// Priority functions over adjacent cluster pairs. All six agree with the
/// sign of the modularity change, so a pair merges only while dQ > 0
/// regardless of kind.
///
///   MI   modularity increase dQ
///   WD   weight density f(C,D) / (deg(C) deg(D))
///   Sig  dQ / sqrt(deg(C) deg(D))
///   DA   dQ / min(deg(C), deg(D))
///   HN   min(size(C)/size(D), size(D)/size(C)) * dQ, size = vertex count
///   HE   same ratio with size = number of adjacent clusters
enum class PrioritizerKind { MI, WD, Sig, DA, HN, HE };

PrioritizerKind parse_prioritizer(std::string_view name);
std::string_view to_string(PrioritizerKind kind);

/// Everything a priority function may consume about a cluster pair.
struct ClusterPairInfo {
    double weight_between = 0.0;  // f(C,D)
    double degree_c = 0.0, degree_d = 0.0;
    std::size_t vertices_c = 0, vertices_d = 0;   // HN sizes
    std::size_t neighbors_c = 0, neighbors_d = 0;  // HE sizes
    double total_weight = 0.0;                     // f(V,V)
};

/// 2 f(C,D)/f(V,V) - 2 deg(C) deg(D)/deg(V)^2.
double pair_delta_q(const ClusterPairInfo& info);

/// Priority of an adjacent pair. Throws if weight_between <= 0 (priorities
/// are defined only for adjacent pairs, whose degrees are then positive).
double merge_priority(PrioritizerKind kind, const ClusterPairInfo& info);

/// Assembles ClusterPairInfo from a clustering by scanning the smaller
/// cluster's members. Intended for tests and one-off queries; the coarsening
/// queue maintains this data incrementally.
ClusterPairInfo cluster_pair_info(const Graph& g, const Clustering& clustering, ClusterId c,
                                  ClusterId d);

}  // namespace modcluster
