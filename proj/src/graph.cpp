#include "modcluster/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace modcluster {

double Graph::edge_weight(VertexId u, VertexId v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return 0.0;
    return weight_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
}

void GraphBuilder::add_edge(VertexId u, VertexId v, double w) {
    if (u >= vertex_count_ || v >= vertex_count_)
        throw std::invalid_argument("edge endpoint out of range");
    if (w < 0.0) throw std::invalid_argument("negative edge weight");
    entries_.push_back({u, v, w});
}

Graph GraphBuilder::build() && {
    // Canonicalize to u <= v, then sort and fold duplicates.
    for (auto& e : entries_)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::vector<Entry> merged;
    merged.reserve(entries_.size());
    for (const auto& e : entries_) {
        if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
            merged.back().w += e.w;
        else
            merged.push_back(e);
    }
    std::erase_if(merged, [](const Entry& e) { return e.w == 0.0; });

    Graph g;
    const std::size_t n = vertex_count_;
    std::vector<std::size_t> row_len(n, 0);
    for (const auto& e : merged) {
        ++row_len[e.u];
        if (e.u != e.v) ++row_len[e.v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + row_len[v];
    g.adjacency_.resize(g.offsets_[n]);
    g.weight_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Entries are sorted by (u, v); filling u's row in order and v's row as
    // u ascends keeps every adjacency row sorted by neighbor id.
    for (const auto& e : merged) {
        g.adjacency_[cursor[e.u]] = e.v;
        g.weight_[cursor[e.u]++] = e.w;
        if (e.u != e.v) {
            g.adjacency_[cursor[e.v]] = e.u;
            g.weight_[cursor[e.v]++] = e.w;
        }
    }

    g.degrees_.assign(n, 0.0);
    g.self_weight_.assign(n, 0.0);
    for (VertexId v = 0; v < n; ++v) {
        double d = 0.0;
        for (std::size_t i = g.offsets_[v]; i < g.offsets_[v + 1]; ++i) {
            d += g.weight_[i];
            if (g.adjacency_[i] == v) g.self_weight_[v] = g.weight_[i];
        }
        g.degrees_[v] = d;
        g.total_weight_ += d;
    }
    g.edge_count_ = merged.size();
    return g;
}

}  // namespace modcluster
