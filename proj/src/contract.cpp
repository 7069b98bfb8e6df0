#include "modcluster/contract.hpp"

namespace modcluster {

ContractResult contract(const Graph& g, const Clustering& clustering) {
    const std::size_t n = g.vertex_count();
    ContractResult result;
    result.vertex_map = clustering.dense_assignment();
    const std::size_t k = clustering.cluster_count();

    GraphBuilder builder(k);
    // Accumulate cluster-pair weights per coarse vertex; vertices of one
    // cluster are processed consecutively so the scratch row stays small.
    std::vector<std::vector<VertexId>> members(k);
    for (VertexId v = 0; v < n; ++v) members[result.vertex_map[v]].push_back(v);

    std::vector<double> acc(k, 0.0);
    std::vector<VertexId> touched;
    for (VertexId p = 0; p < k; ++p) {
        touched.clear();
        double self = 0.0;  // f(P,P): intra undirected edges twice, self-edges once
        for (VertexId v : members[p]) {
            g.for_each_edge(v, [&](VertexId u, double w) {
                const VertexId q = result.vertex_map[u];
                if (q == p) {
                    self += w;
                } else if (q > p) {  // each coarse pair added once
                    if (acc[q] == 0.0) touched.push_back(q);
                    acc[q] += w;
                }
            });
        }
        if (self > 0.0) builder.add_edge(p, p, self);
        for (VertexId q : touched) {
            builder.add_edge(p, q, acc[q]);
            acc[q] = 0.0;
        }
    }
    result.graph = std::move(builder).build();
    return result;
}

}  // namespace modcluster
