#include "modcluster/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace modcluster {

Clustering::Clustering(const Graph& g) : graph_(&g) {
    const std::size_t n = g.vertex_count();
    assignment_.assign(n, 0);
    next_.assign(n, kNoVertex);
    prev_.assign(n, kNoVertex);
}

Clustering Clustering::singletons(const Graph& g) {
    Clustering c(g);
    const std::size_t n = g.vertex_count();
    c.degree_.resize(n);
    c.internal_.resize(n);
    c.size_.assign(n, 1);
    c.head_.resize(n);
    for (VertexId v = 0; v < n; ++v) {
        c.assignment_[v] = v;
        c.degree_[v] = g.degree(v);
        c.internal_[v] = g.self_weight(v);
        c.head_[v] = v;
    }
    c.live_ = n;
    return c;
}

Clustering Clustering::single_cluster(const Graph& g) {
    std::vector<ClusterId> labels(g.vertex_count(), 0);
    return Clustering(g, labels);
}

Clustering::Clustering(const Graph& g, std::span<const ClusterId> labels) : Clustering(g) {
    if (labels.size() != g.vertex_count())
        throw std::invalid_argument("label count does not match vertex count");
    init_from_labels(labels);
}

void Clustering::init_from_labels(std::span<const ClusterId> labels) {
    const Graph& g = *graph_;
    const std::size_t n = g.vertex_count();

    // Densify labels in order of first appearance.
    std::vector<std::pair<ClusterId, ClusterId>> remap;  // (label, dense id), sorted by label
    {
        std::vector<ClusterId> sorted(labels.begin(), labels.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        remap.reserve(sorted.size());
        for (ClusterId l : sorted) remap.emplace_back(l, 0);
    }
    auto slot_of = [&](ClusterId label) {
        auto it = std::lower_bound(remap.begin(), remap.end(), label,
                                   [](const auto& p, ClusterId l) { return p.first < l; });
        return static_cast<ClusterId>(it - remap.begin());
    };
    ClusterId next_dense = 0;
    std::vector<ClusterId> dense_of_slot(remap.size(), kNewCluster);
    for (VertexId v = 0; v < n; ++v) {
        ClusterId s = slot_of(labels[v]);
        if (dense_of_slot[s] == kNewCluster) dense_of_slot[s] = next_dense++;
        assignment_[v] = dense_of_slot[s];
    }

    const std::size_t k = next_dense;
    degree_.assign(k, 0.0);
    internal_.assign(k, 0.0);
    size_.assign(k, 0);
    head_.assign(k, kNoVertex);
    live_ = k;
    // Attach in reverse so membership lists enumerate vertices ascending.
    for (VertexId i = n; i-- > 0;) attach(i, assignment_[i]);
    // Per-vertex row sums accumulate in the same grouping the graph uses
    // for degrees and the total weight, so the all-in-one clustering gets
    // f(C,C) == deg(C) == f(V,V) bit-exactly and Q == 0.
    for (VertexId v = 0; v < n; ++v) {
        const ClusterId c = assignment_[v];
        degree_[c] += g.degree(v);
        double row = 0.0;
        g.for_each_edge(v, [&](VertexId u, double w) {
            if (assignment_[u] == c) row += w;
        });
        internal_[c] += row;
    }
}

double Clustering::modularity() const {
    const double w = graph_->total_weight();
    if (w <= 0.0) throw std::invalid_argument("degenerate graph: total weight is zero");
    double q = 0.0;
    for (ClusterId c = 0; c < head_.size(); ++c) {
        if (size_[c] == 0) continue;
        const double dc = degree_[c] / w;
        q += internal_[c] / w - dc * dc;
    }
    return q;
}

ClusterId Clustering::allocate_cluster() {
    ClusterId c;
    if (!free_slots_.empty()) {
        c = free_slots_.back();
        free_slots_.pop_back();
    } else {
        c = static_cast<ClusterId>(head_.size());
        degree_.push_back(0.0);
        internal_.push_back(0.0);
        size_.push_back(0);
        head_.push_back(kNoVertex);
    }
    ++live_;
    return c;
}

void Clustering::attach(VertexId v, ClusterId c) {
    next_[v] = head_[c];
    prev_[v] = kNoVertex;
    if (head_[c] != kNoVertex) prev_[head_[c]] = v;
    head_[c] = v;
    ++size_[c];
}

void Clustering::detach(VertexId v, ClusterId c) {
    if (prev_[v] != kNoVertex)
        next_[prev_[v]] = next_[v];
    else
        head_[c] = next_[v];
    if (next_[v] != kNoVertex) prev_[next_[v]] = prev_[v];
    --size_[c];
}

ClusterId Clustering::move_vertex(VertexId v, ClusterId target) {
    const ClusterId from = assignment_[v];
    if (target == from) throw std::invalid_argument("move target equals current cluster");
    if (target != kNewCluster && !is_live(target))
        throw std::invalid_argument("move target is not a live cluster");

    const Graph& g = *graph_;
    double to_from = 0.0, to_target = 0.0;
    g.for_each_edge(v, [&](VertexId u, double w) {
        if (u == v) return;
        const ClusterId cu = assignment_[u];
        if (cu == from) to_from += w;
        else if (cu == target) to_target += w;
    });
    const double self = g.self_weight(v);
    const double dv = g.degree(v);

    detach(v, from);
    internal_[from] -= 2.0 * to_from + self;
    degree_[from] -= dv;
    if (size_[from] == 0) {
        internal_[from] = 0.0;  // clear rounding residue in the dead slot
        degree_[from] = 0.0;
        free_slots_.push_back(from);
        --live_;
    }

    const ClusterId to = target == kNewCluster ? allocate_cluster() : target;
    attach(v, to);
    internal_[to] += 2.0 * to_target + self;
    degree_[to] += dv;
    assignment_[v] = to;
    return to;
}

ClusterId Clustering::merge_clusters(ClusterId into, ClusterId from) {
    if (into == from) throw std::invalid_argument("cannot merge a cluster with itself");
    if (!is_live(into) || !is_live(from))
        throw std::invalid_argument("merge endpoint is not a live cluster");

    double between = 0.0;  // f(into, from), ordered pairs
    for_each_member(from, [&](VertexId v) {
        graph_->for_each_edge(v, [&](VertexId u, double w) {
            if (assignment_[u] == into) between += w;
        });
    });
    internal_[into] += internal_[from] + 2.0 * between;
    degree_[into] += degree_[from];

    VertexId v = head_[from];
    while (v != kNoVertex) {
        const VertexId nxt = next_[v];
        assignment_[v] = into;
        attach(v, into);
        v = nxt;
    }
    size_[from] = 0;
    head_[from] = kNoVertex;
    degree_[from] = 0.0;
    internal_[from] = 0.0;
    free_slots_.push_back(from);
    --live_;
    return into;
}

std::vector<ClusterId> Clustering::dense_assignment() const {
    std::vector<ClusterId> out(assignment_.size());
    std::vector<ClusterId> remap(head_.size(), kNewCluster);
    ClusterId next = 0;
    for (VertexId v = 0; v < assignment_.size(); ++v) {
        ClusterId& slot = remap[assignment_[v]];
        if (slot == kNewCluster) slot = next++;
        out[v] = slot;
    }
    return out;
}

void Clustering::check_consistency(double rel_tol) const {
    const Graph& g = *graph_;
    auto close = [&](double a, double b) {
        return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
    };
    std::vector<double> deg(head_.size(), 0.0), intra(head_.size(), 0.0);
    std::vector<std::uint32_t> cnt(head_.size(), 0);
    for (VertexId v = 0; v < assignment_.size(); ++v) {
        const ClusterId c = assignment_[v];
        if (!is_live(c)) throw std::logic_error("vertex assigned to dead cluster");
        deg[c] += g.degree(v);
        ++cnt[c];
        g.for_each_edge(v, [&](VertexId u, double w) {
            if (assignment_[u] == c) intra[c] += w;
        });
    }
    std::size_t live = 0;
    for (ClusterId c = 0; c < head_.size(); ++c) {
        if (size_[c] == 0) continue;
        ++live;
        if (cnt[c] != size_[c]) throw std::logic_error("cluster size cache mismatch");
        if (!close(deg[c], degree_[c])) throw std::logic_error("cluster degree cache mismatch");
        if (!close(intra[c], internal_[c]))
            throw std::logic_error("cluster internal weight cache mismatch");
        std::size_t listed = 0;
        for_each_member(c, [&](VertexId v) {
            if (assignment_[v] != c) throw std::logic_error("membership list corrupt");
            ++listed;
        });
        if (listed != size_[c]) throw std::logic_error("membership list length mismatch");
    }
    if (live != live_) throw std::logic_error("live cluster count mismatch");
}

double modularity(const Graph& g, const Clustering& clustering) {
    const double w = g.total_weight();
    if (w <= 0.0) throw std::invalid_argument("degenerate graph: total weight is zero");
    std::vector<double> intra(clustering.cluster_slots(), 0.0);
    std::vector<double> deg(clustering.cluster_slots(), 0.0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const ClusterId c = clustering.cluster_of(v);
        deg[c] += g.degree(v);
        double row = 0.0;
        g.for_each_edge(v, [&](VertexId u, double ew) {
            if (clustering.cluster_of(u) == c) row += ew;
        });
        intra[c] += row;
    }
    double q = 0.0;
    clustering.for_each_cluster(
        [&](ClusterId c) { q += intra[c] / w - (deg[c] / w) * (deg[c] / w); });
    return q;
}

double delta_q_merge(const Graph& g, const Clustering& clustering, ClusterId c, ClusterId d) {
    if (c == d) throw std::invalid_argument("delta_q_merge requires distinct clusters");
    if (!clustering.is_live(c) || !clustering.is_live(d))
        throw std::invalid_argument("delta_q_merge endpoint is not a live cluster");
    const double w = g.total_weight();
    if (w <= 0.0) throw std::invalid_argument("degenerate graph: total weight is zero");

    // Scan the smaller cluster's members for f(C,D).
    ClusterId small = c, other = d;
    if (clustering.cluster_size(d) < clustering.cluster_size(c)) std::swap(small, other);
    double between = 0.0;
    clustering.for_each_member(small, [&](VertexId v) {
        g.for_each_edge(v, [&](VertexId u, double ew) {
            if (clustering.cluster_of(u) == other) between += ew;
        });
    });
    return 2.0 * between / w -
           2.0 * clustering.cluster_degree(c) * clustering.cluster_degree(d) / (w * w);
}

double delta_q_move(const Graph& g, const Clustering& clustering, VertexId v, ClusterId target) {
    const ClusterId from = clustering.cluster_of(v);
    if (target == from) throw std::invalid_argument("move target equals current cluster");
    if (target != kNewCluster && !clustering.is_live(target))
        throw std::invalid_argument("move target is not a live cluster");
    const double w = g.total_weight();
    if (w <= 0.0) throw std::invalid_argument("degenerate graph: total weight is zero");

    double to_from = 0.0, to_target = 0.0;
    g.for_each_edge(v, [&](VertexId u, double ew) {
        if (u == v) return;
        const ClusterId cu = clustering.cluster_of(u);
        if (cu == from) to_from += ew;
        else if (cu == target) to_target += ew;
    });
    const double dv = g.degree(v);
    const double deg_rest = clustering.cluster_degree(from) - dv;  // deg(C - v)
    const double deg_target = target == kNewCluster ? 0.0 : clustering.cluster_degree(target);
    return (2.0 * to_target - 2.0 * to_from) / w -
           (2.0 * dv * deg_target - 2.0 * dv * deg_rest) / (w * w);
}

void ClusterWeightScratch::accumulate(const Graph& g, const Clustering& clustering, VertexId v) {
    if (acc_.size() < clustering.cluster_slots()) acc_.resize(clustering.cluster_slots(), 0.0);
    for (ClusterId c : touched_) acc_[c] = 0.0;
    touched_.clear();
    g.for_each_edge(v, [&](VertexId u, double w) {
        if (u == v) return;
        const ClusterId c = clustering.cluster_of(u);
        if (acc_[c] == 0.0) touched_.push_back(c);
        acc_[c] += w;
    });
}

}  // namespace modcluster
