#include "modcluster/prioritizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace modcluster {

PrioritizerKind parse_prioritizer(std::string_view name) {
    if (name == "mi") return PrioritizerKind::MI;
    if (name == "wd") return PrioritizerKind::WD;
    if (name == "sig") return PrioritizerKind::Sig;
    if (name == "da") return PrioritizerKind::DA;
    if (name == "hn") return PrioritizerKind::HN;
    if (name == "he") return PrioritizerKind::HE;
    throw std::invalid_argument("unknown prioritizer: " + std::string(name));
}

std::string_view to_string(PrioritizerKind kind) {
    switch (kind) {
        case PrioritizerKind::MI: return "mi";
        case PrioritizerKind::WD: return "wd";
        case PrioritizerKind::Sig: return "sig";
        case PrioritizerKind::DA: return "da";
        case PrioritizerKind::HN: return "hn";
        case PrioritizerKind::HE: return "he";
    }
    return "?";
}

double pair_delta_q(const ClusterPairInfo& info) {
    const double w = info.total_weight;
    return 2.0 * info.weight_between / w - 2.0 * info.degree_c * info.degree_d / (w * w);
}

double merge_priority(PrioritizerKind kind, const ClusterPairInfo& info) {
    if (info.weight_between <= 0.0)
        throw std::invalid_argument("merge priority requested for a non-adjacent cluster pair");
    const double dd = info.degree_c * info.degree_d;
    switch (kind) {
        case PrioritizerKind::MI:
            return pair_delta_q(info);
        case PrioritizerKind::WD:
            return info.weight_between / dd;
        case PrioritizerKind::Sig:
            return pair_delta_q(info) / std::sqrt(dd);
        case PrioritizerKind::DA:
            return pair_delta_q(info) / std::min(info.degree_c, info.degree_d);
        case PrioritizerKind::HN: {
            const double a = static_cast<double>(info.vertices_c);
            const double b = static_cast<double>(info.vertices_d);
            return std::min(a / b, b / a) * pair_delta_q(info);
        }
        case PrioritizerKind::HE: {
            const double a = static_cast<double>(info.neighbors_c);
            const double b = static_cast<double>(info.neighbors_d);
            return std::min(a / b, b / a) * pair_delta_q(info);
        }
    }
    throw std::logic_error("unreachable");
}

ClusterPairInfo cluster_pair_info(const Graph& g, const Clustering& clustering, ClusterId c,
                                  ClusterId d) {
    if (c == d) throw std::invalid_argument("cluster pair must be distinct");
    ClusterPairInfo info;
    info.total_weight = g.total_weight();
    info.degree_c = clustering.cluster_degree(c);
    info.degree_d = clustering.cluster_degree(d);
    info.vertices_c = clustering.cluster_size(c);
    info.vertices_d = clustering.cluster_size(d);

    auto count_neighbors = [&](ClusterId of) {
        std::set<ClusterId> seen;
        clustering.for_each_member(of, [&](VertexId v) {
            g.for_each_edge(v, [&](VertexId u, double w) {
                const ClusterId cu = clustering.cluster_of(u);
                if (cu != of && w > 0.0) seen.insert(cu);
            });
        });
        return seen.size();
    };
    info.neighbors_c = count_neighbors(c);
    info.neighbors_d = count_neighbors(d);

    ClusterId small = c, other = d;
    if (clustering.cluster_size(d) < clustering.cluster_size(c)) std::swap(small, other);
    clustering.for_each_member(small, [&](VertexId v) {
        g.for_each_edge(v, [&](VertexId u, double w) {
            if (clustering.cluster_of(u) == other) info.weight_between += w;
        });
    });
    return info;
}

}  // namespace modcluster
