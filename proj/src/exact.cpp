#include "modcluster/exact.hpp"

#include <array>
#include <stdexcept>

namespace modcluster {

namespace {

struct Enumerator {
    const Graph& g;
    std::size_t n;
    double w;
    std::array<std::array<double, kExactMaxVertices>, kExactMaxVertices> pair;  // f(u,v)
    std::array<ClusterId, kExactMaxVertices> label{};
    std::array<double, kExactMaxVertices> cluster_degree{};
    std::array<double, kExactMaxVertices> cluster_internal{};
    double best_q = -2.0;
    std::array<ClusterId, kExactMaxVertices> best{};

    explicit Enumerator(const Graph& graph) : g(graph), n(graph.vertex_count()), w(graph.total_weight()) {
        for (auto& row : pair) row.fill(0.0);
        for (VertexId u = 0; u < n; ++u)
            g.for_each_edge(u, [&](VertexId v, double ew) { pair[u][v] = ew; });
    }

    void run(std::size_t i, ClusterId used) {
        if (i == n) {
            double q = 0.0;
            for (ClusterId c = 0; c < used; ++c) {
                const double dc = cluster_degree[c] / w;
                q += cluster_internal[c] / w - dc * dc;
            }
            if (q > best_q) {
                best_q = q;
                best = label;
            }
            return;
        }
        // Restricted growth: vertex i may join clusters 0..used-1 or open
        // cluster `used`.
        for (ClusterId c = 0; c <= used; ++c) {
            double joined = pair[i][i];  // ordered-pair contribution of adding i
            for (std::size_t j = 0; j < i; ++j)
                if (label[j] == c) joined += 2.0 * pair[i][j];
            label[i] = c;
            cluster_degree[c] += g.degree(static_cast<VertexId>(i));
            cluster_internal[c] += joined;
            run(i + 1, c == used ? used + 1 : used);
            cluster_degree[c] -= g.degree(static_cast<VertexId>(i));
            cluster_internal[c] -= joined;
        }
    }
};

}  // namespace

ExactResult exact_max_modularity(const Graph& g) {
    if (g.vertex_count() > kExactMaxVertices)
        throw std::invalid_argument("exact solver is limited to 12 vertices");
    if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
    if (g.total_weight() <= 0.0)
        throw std::invalid_argument("degenerate graph: total weight is zero");

    Enumerator e(g);
    e.run(0, 0);
    std::vector<ClusterId> labels(e.best.begin(), e.best.begin() + e.n);
    return {Clustering(g, labels), e.best_q};
}

}  // namespace modcluster
