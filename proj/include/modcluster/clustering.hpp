#pragma once

#include <limits>
#include <span>
#include <vector>

#include "modcluster/graph.hpp"

namespace modcluster {

/// Sentinel target denoting a freshly created cluster in vertex moves.
inline constexpr ClusterId kNewCluster = std::numeric_limits<ClusterId>::max();

/// Partition of the vertex set into disjoint non-empty clusters, with cached
/// per-cluster degree deg(C) and internal weight f(C,C).
///
/// f(C,C) counts ordered pairs: each undirected intra-cluster edge twice,
/// self-edges once, matching the convention f(V,V) = sum_{u,v} f(u,v).
///
/// Cluster ids are slots; moving the last vertex out of a cluster frees the
/// slot for reuse by later kNewCluster moves, so no empty cluster is ever
/// observable. Single-writer: concurrent mutation is not supported.
class Clustering {
public:
    /// Every vertex in its own cluster, cluster id == vertex id.
    static Clustering singletons(const Graph& g);

    /// All vertices in cluster 0.
    static Clustering single_cluster(const Graph& g);

    /// From arbitrary labels, densified to 0..k-1 in order of first
    /// appearance over vertex ids.
    Clustering(const Graph& g, std::span<const ClusterId> labels);

    const Graph& graph() const { return *graph_; }

    std::size_t vertex_count() const { return assignment_.size(); }
    std::size_t cluster_count() const { return live_; }
    /// Upper bound over cluster ids in use (dead slots included).
    std::size_t cluster_slots() const { return head_.size(); }

    ClusterId cluster_of(VertexId v) const { return assignment_[v]; }
    bool is_live(ClusterId c) const { return c < size_.size() && size_[c] > 0; }

    double cluster_degree(ClusterId c) const { return degree_[c]; }
    double cluster_internal_weight(ClusterId c) const { return internal_[c]; }
    std::size_t cluster_size(ClusterId c) const { return size_[c]; }

    template <typename F>
    void for_each_cluster(F&& f) const {
        for (ClusterId c = 0; c < head_.size(); ++c)
            if (size_[c] > 0) f(c);
    }

    template <typename F>
    void for_each_member(ClusterId c, F&& f) const {
        for (VertexId v = head_[c]; v != kNoVertex; v = next_[v]) f(v);
    }

    /// Q from the caches. Throws on a zero-total-weight graph.
    double modularity() const;

    /// Moves v into `target` (an existing cluster, or kNewCluster to open a
    /// new one). Returns the actual target id. Throws if target is v's
    /// current cluster or not live.
    ClusterId move_vertex(VertexId v, ClusterId target);

    /// Reassigns all members of `from` into `into`. Returns `into`.
    ClusterId merge_clusters(ClusterId into, ClusterId from);

    /// Labels renumbered densely 0..k-1 in order of first appearance.
    std::vector<ClusterId> dense_assignment() const;

    std::span<const ClusterId> assignment() const { return assignment_; }

    /// Recomputes every cache from the graph and compares within `rel_tol`
    /// relative tolerance; throws std::logic_error on mismatch or on a
    /// structural defect (empty live cluster, bad membership list).
    void check_consistency(double rel_tol = 1e-9) const;

private:
    static constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

    explicit Clustering(const Graph& g);
    void init_from_labels(std::span<const ClusterId> labels);
    ClusterId allocate_cluster();
    void detach(VertexId v, ClusterId c);
    void attach(VertexId v, ClusterId c);

    const Graph* graph_;
    std::vector<ClusterId> assignment_;
    std::vector<double> degree_;     // deg(C)
    std::vector<double> internal_;   // f(C,C), ordered pairs
    std::vector<std::uint32_t> size_;
    std::vector<VertexId> head_;     // intrusive membership lists
    std::vector<VertexId> next_, prev_;
    std::vector<ClusterId> free_slots_;
    std::size_t live_ = 0;
};

/// Q(C) = sum_C ( f(C,C)/f(V,V) - deg(C)^2/deg(V)^2 ), recomputed from the
/// edges rather than the clustering's caches. Throws on f(V,V) = 0.
double modularity(const Graph& g, const Clustering& clustering);

/// Modularity gained by merging clusters c and d:
/// 2 f(C,D)/f(V,V) - 2 deg(C) deg(D)/deg(V)^2. Throws if c == d.
double delta_q_merge(const Graph& g, const Clustering& clustering, ClusterId c, ClusterId d);

/// Modularity gained by moving v to cluster `target` (or kNewCluster).
/// Throws if target is v's current cluster.
double delta_q_move(const Graph& g, const Clustering& clustering, VertexId v, ClusterId target);

/// Reusable accumulator for f(v, C) over the clusters adjacent to a vertex.
/// Self-edges are excluded, so the entry for v's own cluster is f(v, C-v).
class ClusterWeightScratch {
public:
    void accumulate(const Graph& g, const Clustering& clustering, VertexId v);

    double weight_to(ClusterId c) const { return acc_[c]; }
    std::span<const ClusterId> touched() const { return touched_; }

private:
    std::vector<double> acc_;
    std::vector<ClusterId> touched_;
};

}  // namespace modcluster
