#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace modcluster {

using VertexId = std::uint32_t;
using ClusterId = std::uint32_t;

/// Weighted undirected multigraph in CSR form, immutable after construction.
///
/// Edge weights are a symmetric function f(u,v) >= 0. Each undirected edge
/// {u,v} with u != v is stored in both adjacency rows; a self-edge is stored
/// once in its row. The degree deg(v) = sum_u f(u,v) counts self-edges once,
/// which keeps the identity deg(V) = f(V,V) where f(V,V) sums over ordered
/// vertex pairs. (Some of the literature doubles self-loops in the degree;
/// this library deliberately does not.)
class Graph {
public:
    Graph() = default;

    std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }

    /// Number of undirected edges, self-edges included.
    std::size_t edge_count() const { return edge_count_; }

    /// f(V,V): total weight over ordered vertex pairs. Equals deg(V).
    double total_weight() const { return total_weight_; }

    double degree(VertexId v) const { return degrees_[v]; }

    double self_weight(VertexId v) const { return self_weight_[v]; }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    std::span<const double> weights(VertexId v) const {
        return {weight_.data() + offsets_[v], weight_.data() + offsets_[v + 1]};
    }

    std::size_t adjacency_size(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

    /// Visits (neighbor, weight) pairs of v, neighbors ascending.
    template <typename F>
    void for_each_edge(VertexId v, F&& f) const {
        for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i)
            f(adjacency_[i], weight_[i]);
    }

    /// Visits each undirected edge once as (u, v, w) with u <= v.
    template <typename F>
    void for_each_undirected_edge(F&& f) const {
        for (VertexId u = 0; u < vertex_count(); ++u)
            for (std::size_t i = offsets_[u]; i < offsets_[u + 1]; ++i)
                if (adjacency_[i] >= u) f(u, adjacency_[i], weight_[i]);
    }

    /// f(u,v); 0 if no edge. Binary search over u's row.
    double edge_weight(VertexId u, VertexId v) const;

private:
    friend class GraphBuilder;

    std::vector<std::size_t> offsets_{0};
    std::vector<VertexId> adjacency_;
    std::vector<double> weight_;
    std::vector<double> degrees_;
    std::vector<double> self_weight_;
    double total_weight_ = 0.0;
    std::size_t edge_count_ = 0;
};

/// Accumulating builder. Duplicate (u,v) insertions sum their weights;
/// zero-weight pairs are dropped from the final adjacency.
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t vertex_count = 0) : vertex_count_(vertex_count) {}

    VertexId add_vertex() { return static_cast<VertexId>(vertex_count_++); }

    std::size_t vertex_count() const { return vertex_count_; }

    /// Records f(u,v) += w (and f(v,u) by symmetry). Throws on negative
    /// weight or out-of-range endpoint.
    void add_edge(VertexId u, VertexId v, double w = 1.0);

    Graph build() &&;

private:
    struct Entry {
        VertexId u, v;
        double w;
    };
    std::size_t vertex_count_;
    std::vector<Entry> entries_;
};

}  // namespace modcluster
