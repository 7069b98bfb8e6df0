#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "modcluster/clustering.hpp"
#include "modcluster/graph.hpp"
#include "modcluster/prioritizer.hpp"

namespace modcluster {

/// Fired after each applied merge. Returning false stops the coarsener at
/// the current state (used by the multi-level driver for level recording).
struct MergeEvent {
    ClusterId survivor;
    ClusterId absorbed;
    double delta_q;
    double priority;
    std::size_t clusters_remaining;
};
using MergeObserver = std::function<bool(const MergeEvent&)>;

/// Dynamically coarsened working graph: one vertex per live cluster, with
/// each inter-cluster edge held once and threaded through both endpoints'
/// edge lists, sorted by neighbor id. Merging splices the shorter list into
/// the longer one and corrects the positions of redirected edges in the
/// neighbours' lists so every list stays sorted.
class CoarseMergeState {
public:
    explicit CoarseMergeState(const Graph& g);

    std::size_t cluster_count() const { return live_; }
    /// Upper bound over cluster ids ever used (== base vertex count).
    std::size_t slot_count() const { return alive_.size(); }
    bool alive(ClusterId c) const { return alive_[c]; }
    double total_weight() const { return total_weight_; }
    double degree(ClusterId c) const { return degree_[c]; }
    std::size_t vertex_count_of(ClusterId c) const { return vertices_[c]; }
    /// Number of clusters adjacent to c by a positive-weight edge.
    std::size_t neighbor_count_of(ClusterId c) const { return neighbors_[c]; }

    /// Visits (other, weight) along c's edge list, neighbor ids ascending.
    template <typename F>
    void for_each_neighbor(ClusterId c, F&& f) const {
        for (std::uint32_t e = head_[c]; e != kNone; e = edges_[e].next[side(e, c)])
            f(other_end(e, c), edges_[e].w);
    }

    /// Visits every live adjacent pair once as (c, d, weight) with c < d.
    template <typename F>
    void for_each_pair(F&& f) const {
        for (ClusterId c = 0; c < alive_.size(); ++c) {
            if (!alive_[c]) continue;
            for_each_neighbor(c, [&](ClusterId d, double w) {
                if (d > c) f(c, d, w);
            });
        }
    }

    /// f(C,D); 0 if not adjacent.
    double pair_weight(ClusterId c, ClusterId d) const;

    ClusterPairInfo pair_info(ClusterId c, ClusterId d) const;

    struct MergeOutcome {
        ClusterId survivor;
        ClusterId absorbed;
        /// Common neighbors whose parallel edges folded into one; their
        /// distinct-neighbor counts dropped by one.
        std::vector<ClusterId> folded;
    };

    /// Merges two adjacent live clusters. The cluster with the longer edge
    /// list keeps its id (ties keep the smaller id).
    MergeOutcome merge(ClusterId c, ClusterId d);

    /// Current cluster label of every base-graph vertex.
    std::vector<ClusterId> assignment() const;

    /// Materializes the current state as a Clustering of the base graph.
    Clustering snapshot() const;

private:
    static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

    struct EdgeRec {
        ClusterId end[2];
        double w;
        std::uint32_t next[2];
        std::uint32_t prev[2];
    };

    int side(std::uint32_t e, ClusterId c) const { return edges_[e].end[1] == c ? 1 : 0; }
    ClusterId other_end(std::uint32_t e, ClusterId c) const {
        return edges_[e].end[side(e, c) ^ 1];
    }
    void unlink(std::uint32_t e, ClusterId from);
    void reposition(std::uint32_t e, ClusterId x, ClusterId new_key);
    ClusterId find_root(ClusterId c) const;

    const Graph* base_;
    double total_weight_;
    std::vector<EdgeRec> edges_;
    std::vector<std::uint32_t> head_;
    std::vector<double> degree_;
    std::vector<std::uint32_t> vertices_;   // HN size
    std::vector<std::uint32_t> neighbors_;  // HE size == edge list length
    mutable std::vector<ClusterId> parent_;  // merge forest, root == live cluster
    std::vector<bool> alive_;
    std::size_t live_;
};

/// Max-heap of clusters keyed by their best merge partner's priority. The
/// top always names the globally best adjacent pair; ties resolve to the
/// lexicographically smallest (min id, max id) pair.
class MergeCandidateQueue {
public:
    MergeCandidateQueue(CoarseMergeState& state, PrioritizerKind kind);

    struct Candidate {
        ClusterId c, d;  // c < d
        double priority;
        double delta_q;
    };

    std::optional<Candidate> top() const;

    /// Applies the top pair's merge and restores queue invariants.
    CoarseMergeState::MergeOutcome merge_top();

    const CoarseMergeState& state() const { return *state_; }

private:
    double priority_of(ClusterId c, ClusterId d, double w) const;
    void rescan(ClusterId c);
    void improve_with(ClusterId c, ClusterId d, double w);
    bool orders_before(ClusterId a, ClusterId b) const;
    void sift_up(std::size_t i);
    void sift_down(std::size_t i);
    void heap_set(std::size_t i, ClusterId c);
    void heap_remove(ClusterId c);
    void heap_fix(ClusterId c);

    static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

    CoarseMergeState* state_;
    PrioritizerKind kind_;
    std::vector<ClusterId> best_partner_;
    std::vector<double> best_priority_;
    std::vector<double> best_weight_;
    std::vector<ClusterId> heap_;
    std::vector<std::uint32_t> heap_pos_;
};

/// Starts from singletons and repeatedly merges the highest-priority pair
/// while its modularity change is positive.
Clustering single_step_greedy(const Graph& g, PrioritizerKind prioritizer,
                              const MergeObserver& observer = {});

/// Each round ranks the modularity-increasing pairs by priority once and
/// merges the top ceil(merge_fraction% of them) whose clusters are both
/// untouched in the round; rounds repeat until no improving pair remains.
Clustering multi_step_greedy(const Graph& g, PrioritizerKind prioritizer,
                             double merge_fraction_percent, const MergeObserver& observer = {});

}  // namespace modcluster
