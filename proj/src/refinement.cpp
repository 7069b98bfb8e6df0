#include "modcluster/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace modcluster {

RefinerKind parse_refiner(std::string_view name) {
    if (name == "none") return RefinerKind::None;
    if (name == "fast") return RefinerKind::FastGreedy;
    if (name == "complete") return RefinerKind::CompleteGreedy;
    if (name == "kl") return RefinerKind::KernighanLin;
    throw std::invalid_argument("unknown refiner: " + std::string(name));
}

std::string_view to_string(RefinerKind kind) {
    switch (kind) {
        case RefinerKind::None: return "none";
        case RefinerKind::FastGreedy: return "fast";
        case RefinerKind::CompleteGreedy: return "complete";
        case RefinerKind::KernighanLin: return "kl";
    }
    return "?";
}

namespace {

constexpr VertexId kNoBest = std::numeric_limits<VertexId>::max();

MoveProposal best_move_impl(const Graph& g, const Clustering& clustering, VertexId v,
                            ClusterWeightScratch& scratch) {
    scratch.accumulate(g, clustering, v);
    const ClusterId from = clustering.cluster_of(v);
    const double w = g.total_weight();
    const double dv = g.degree(v);
    const double to_from = scratch.weight_to(from);  // f(v, C-v)
    const double deg_rest = clustering.cluster_degree(from) - dv;

    // Gain of opening a new cluster; every shared target adds its own terms.
    const double base = -2.0 * to_from / w + 2.0 * dv * deg_rest / (w * w);
    MoveProposal best{v, kNewCluster, base};
    for (ClusterId d : scratch.touched()) {
        if (d == from) continue;
        const double gain =
            base + 2.0 * scratch.weight_to(d) / w - 2.0 * dv * clustering.cluster_degree(d) / (w * w);
        if (gain > best.gain ||
            (gain == best.gain && (best.target == kNewCluster || d < best.target)))
            best = {v, d, gain};
    }
    return best;
}

/// Marks every vertex whose cached best move may have changed after a move
/// that touched clusters a and b: their members and the members' neighbors.
void mark_affected(const Graph& g, const Clustering& clustering, ClusterId a, ClusterId b,
                   std::vector<char>& dirty) {
    for (ClusterId c : {a, b}) {
        if (!clustering.is_live(c)) continue;
        clustering.for_each_member(c, [&](VertexId u) {
            dirty[u] = 1;
            g.for_each_edge(u, [&](VertexId nb, double) { dirty[nb] = 1; });
        });
    }
}

std::vector<VertexId> sweep_order(const Graph& g) {
    std::vector<VertexId> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        return g.adjacency_size(a) < g.adjacency_size(b);
    });
    return order;
}

}  // namespace

MoveProposal best_move_for_vertex(const Graph& g, const Clustering& clustering, VertexId v) {
    ClusterWeightScratch scratch;
    return best_move_impl(g, clustering, v, scratch);
}

void complete_greedy_refine(const Graph& g, Clustering& clustering) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return;
    ClusterWeightScratch scratch;
    std::vector<MoveProposal> cached(n);
    std::vector<char> dirty(n, 1);
    while (true) {
        VertexId pick = kNoBest;
        for (VertexId v = 0; v < n; ++v) {
            if (dirty[v]) {
                cached[v] = best_move_impl(g, clustering, v, scratch);
                dirty[v] = 0;
            }
            if (pick == kNoBest || cached[v].gain > cached[pick].gain) pick = v;
        }
        if (!(cached[pick].gain > 0.0)) break;
        const ClusterId from = clustering.cluster_of(pick);
        const ClusterId to = clustering.move_vertex(pick, cached[pick].target);
        mark_affected(g, clustering, from, to, dirty);
    }
}

void fast_greedy_refine(const Graph& g, Clustering& clustering) {
    const auto order = sweep_order(g);
    ClusterWeightScratch scratch;
    bool moved = true;
    while (moved) {
        moved = false;
        for (VertexId v : order) {
            const MoveProposal p = best_move_impl(g, clustering, v, scratch);
            if (p.gain > 0.0) {
                clustering.move_vertex(v, p.target);
                moved = true;
            }
        }
    }
}

void kernighan_lin_refine(const Graph& g, Clustering& clustering) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return;
    const auto abort_after = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(10.0 * std::log2(static_cast<double>(n)))));

    ClusterWeightScratch scratch;
    std::vector<MoveProposal> cached(n);
    std::vector<char> dirty(n);
    std::vector<char> moved(n);

    while (true) {
        // The pass-start and pass-peak clusterings are compared with
        // from-scratch modularity, which is deterministic per structure;
        // a plateau of equal-Q clusterings therefore cannot produce an
        // endless chain of one-ulp "improvements".
        const double outer_start_q = modularity(g, clustering);
        const std::vector<ClusterId> start(clustering.assignment().begin(),
                                           clustering.assignment().end());
        std::vector<ClusterId> peak = start;
        double current_q = outer_start_q;  // tracked incrementally within the pass
        double peak_q = current_q;
        std::fill(dirty.begin(), dirty.end(), 1);
        std::fill(moved.begin(), moved.end(), 0);
        std::size_t remaining = n;
        std::size_t since_peak = 0;

        while (remaining > 0) {
            VertexId pick = kNoBest;
            for (VertexId v = 0; v < n; ++v) {
                if (moved[v]) continue;
                if (dirty[v]) {
                    cached[v] = best_move_impl(g, clustering, v, scratch);
                    dirty[v] = 0;
                }
                if (pick == kNoBest || cached[v].gain > cached[pick].gain) pick = v;
            }
            const ClusterId from = clustering.cluster_of(pick);
            const ClusterId to = clustering.move_vertex(pick, cached[pick].target);
            current_q += cached[pick].gain;
            moved[pick] = 1;
            --remaining;
            mark_affected(g, clustering, from, to, dirty);
            if (current_q > peak_q) {
                peak_q = current_q;
                peak.assign(clustering.assignment().begin(), clustering.assignment().end());
                since_peak = 0;
            } else if (++since_peak >= abort_after) {
                break;
            }
        }

        Clustering restored(g, peak);
        if (!(modularity(g, restored) > outer_start_q)) {
            clustering = Clustering(g, start);
            break;
        }
        clustering = std::move(restored);
    }
}

void refine(const Graph& g, Clustering& clustering, RefinerKind kind) {
    switch (kind) {
        case RefinerKind::None: return;
        case RefinerKind::FastGreedy: return fast_greedy_refine(g, clustering);
        case RefinerKind::CompleteGreedy: return complete_greedy_refine(g, clustering);
        case RefinerKind::KernighanLin: return kernighan_lin_refine(g, clustering);
    }
}

}  // namespace modcluster
