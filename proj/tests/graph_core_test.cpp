#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "modcluster/clustering.hpp"
#include "modcluster/contract.hpp"
#include "modcluster/exact.hpp"
#include "modcluster/graph.hpp"
#include "test_util.hpp"

using namespace modcluster;
using namespace modcluster::test;

TEST_CASE("builder accumulates duplicates and keeps rows sorted") {
    GraphBuilder b(4);
    b.add_edge(2, 1, 2.5);
    b.add_edge(0, 3);
    b.add_edge(1, 2, 2.5);  // duplicate of (2,1)
    b.add_edge(1, 1, 0.5);
    Graph g = std::move(b).build();

    CHECK(g.edge_count() == 3);
    CHECK(g.edge_weight(1, 2) == doctest::Approx(5.0));
    CHECK(g.edge_weight(2, 1) == doctest::Approx(5.0));
    CHECK(g.self_weight(1) == doctest::Approx(0.5));
    // deg counts the self-edge once; deg(V) = f(V,V)
    CHECK(g.degree(1) == doctest::Approx(5.5));
    double deg_sum = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) deg_sum += g.degree(v);
    CHECK(deg_sum == doctest::Approx(g.total_weight()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        auto nb = g.neighbors(v);
        for (std::size_t i = 1; i < nb.size(); ++i) CHECK(nb[i - 1] < nb[i]);
    }
}

TEST_CASE("builder rejects bad edges and drops zero weights") {
    GraphBuilder b(2);
    CHECK_THROWS_AS(b.add_edge(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(b.add_edge(0, 1, -1.0), std::invalid_argument);
    b.add_edge(0, 1, 0.0);
    Graph g = std::move(b).build();
    CHECK(g.edge_count() == 0);
    CHECK(g.total_weight() == 0.0);
}

TEST_CASE("insertion order does not change the graph") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        struct E {
            VertexId u, v;
            double w;
        };
        std::vector<E> edges;
        std::uniform_int_distribution<VertexId> vtx(0, 9);
        std::uniform_real_distribution<double> w(0.5, 2.0);
        for (int i = 0; i < 25; ++i) edges.push_back({vtx(rng), vtx(rng), w(rng)});

        GraphBuilder a(10), b(10);
        for (const E& e : edges) a.add_edge(e.u, e.v, e.w);
        std::shuffle(edges.begin(), edges.end(), rng);
        for (const E& e : edges) b.add_edge(e.v, e.u, e.w);  // also flipped
        Graph ga = std::move(a).build(), gb = std::move(b).build();

        REQUIRE(ga.vertex_count() == gb.vertex_count());
        CHECK(ga.total_weight() == doctest::Approx(gb.total_weight()).epsilon(1e-12));
        for (VertexId v = 0; v < 10; ++v) {
            auto na = ga.neighbors(v), nb = gb.neighbors(v);
            REQUIRE(na.size() == nb.size());
            for (std::size_t i = 0; i < na.size(); ++i) CHECK(na[i] == nb[i]);
        }
    }
}

TEST_CASE("modularity of the all-in-one clustering is exactly zero") {
    std::mt19937 rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        Graph g = random_graph(rng, 2 + rep % 12, 0.4, true, 0.2);
        Clustering all = Clustering::single_cluster(g);
        CHECK(modularity(g, all) == 0.0);
        CHECK(all.modularity() == 0.0);
    }
}

TEST_CASE("modularity on the hand-evaluated fixtures") {
    Graph tri = triangle();
    CHECK(modularity(tri, Clustering::singletons(tri)) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

    Graph tt = two_triangles();
    CHECK(tt.total_weight() == doctest::Approx(14.0));
    auto labels = triangle_labels();
    Clustering tc(tt, labels);
    CHECK(modularity(tt, tc) == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
    CHECK(tc.modularity() == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("modularity rejects a weightless graph") {
    Graph g = std::move(GraphBuilder(3)).build();
    Clustering c = Clustering::singletons(g);
    CHECK_THROWS_AS(modularity(g, c), std::invalid_argument);
}

TEST_CASE("modularity never exceeds one") {
    std::mt19937 rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        Graph g = random_graph(rng, 3 + rep % 10, 0.5, true, 0.3);
        Clustering c = random_clustering(rng, g, 1 + rep % 4);
        CHECK(modularity(g, c) <= 1.0);
    }
}

TEST_CASE("delta_q_merge on the fixtures") {
    Graph tri = triangle();
    Clustering s = Clustering::singletons(tri);
    CHECK(delta_q_merge(tri, s, 0, 1) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    CHECK_THROWS_AS(delta_q_merge(tri, s, 1, 1), std::invalid_argument);

    Graph tt = two_triangles();
    auto labels = triangle_labels();
    Clustering tc(tt, labels);
    // Merging the two triangles collapses to the all-in-one clustering, so
    // the change must be 0 - 5/14.
    CHECK(delta_q_merge(tt, tc, 0, 1) == doctest::Approx(-5.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("delta_q_merge of a non-adjacent pair is strictly negative") {
    GraphBuilder b(4);  // two disjoint edges
    b.add_edge(0, 1);
    b.add_edge(2, 3);
    Graph g = std::move(b).build();
    Clustering s = Clustering::singletons(g);
    const double dq = delta_q_merge(g, s, 0, 2);
    CHECK(dq < 0.0);
    CHECK(dq == doctest::Approx(-2.0 * 1.0 * 1.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("delta_q_move on the fixtures") {
    Graph tri = triangle();
    Clustering s = Clustering::singletons(tri);
    CHECK(delta_q_move(tri, s, 0, kNewCluster) == 0.0);  // singleton to NEW
    CHECK_THROWS_AS(delta_q_move(tri, s, 0, 0), std::invalid_argument);

    // All-in-one two_triangles, moving a non-bridge vertex out: the
    // recompute oracle fixes the value at -2/49.
    Graph tt = two_triangles();
    Clustering all = Clustering::single_cluster(tt);
    const double predicted = delta_q_move(tt, all, 0, kNewCluster);
    Clustering moved = all;
    moved.move_vertex(0, kNewCluster);
    const double recomputed = modularity(tt, moved) - modularity(tt, all);
    CHECK(predicted == doctest::Approx(recomputed).epsilon(1e-12));
    CHECK(predicted == doctest::Approx(-2.0 / 49.0).epsilon(1e-12));
}

TEST_CASE("merge and move predictions agree with recomputation") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 2 + rep % 63;
        Graph g = random_graph(rng, n, 0.3, true, 0.15);
        Clustering c = random_clustering(rng, g, 1 + n / 3);
        const double before = modularity(g, c);

        // merge
        if (c.cluster_count() >= 2) {
            std::vector<ClusterId> live;
            c.for_each_cluster([&](ClusterId id) { live.push_back(id); });
            std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
            ClusterId a = live[pick(rng)], d = live[pick(rng)];
            if (a != d) {
                const double predicted = delta_q_merge(g, c, a, d);
                Clustering merged = c;
                merged.merge_clusters(a, d);
                merged.check_consistency();
                CHECK(std::abs(predicted - (modularity(g, merged) - before)) <= 1e-10);
            }
        }

        // move, including NEW
        std::uniform_int_distribution<VertexId> vpick(0, static_cast<VertexId>(n - 1));
        const VertexId v = vpick(rng);
        std::vector<ClusterId> targets{kNewCluster};
        c.for_each_cluster([&](ClusterId id) {
            if (id != c.cluster_of(v)) targets.push_back(id);
        });
        std::uniform_int_distribution<std::size_t> tpick(0, targets.size() - 1);
        const ClusterId target = targets[tpick(rng)];
        const double predicted = delta_q_move(g, c, v, target);
        Clustering moved = c;
        moved.move_vertex(v, target);
        moved.check_consistency();
        CHECK(std::abs(predicted - (modularity(g, moved) - before)) <= 1e-10);
    }
}

TEST_CASE("scaling every weight leaves modularity unchanged") {
    std::mt19937 rng(19);
    for (double scale : {0.001, 0.37, 42.0, 1e6}) {
        Graph g = random_graph(rng, 12, 0.4, true, 0.2);
        GraphBuilder b(12);
        g.for_each_undirected_edge([&](VertexId u, VertexId v, double w) {
            b.add_edge(u, v, w * scale);
        });
        Graph scaled = std::move(b).build();
        Clustering c = random_clustering(rng, g, 4);
        Clustering cs(scaled, c.assignment());
        const double q = modularity(g, c), qs = modularity(scaled, cs);
        CHECK(std::abs(q - qs) <= 1e-12 * std::max(1.0, std::abs(q)));
    }
}

TEST_CASE("emptied clusters disappear") {
    Graph tri = triangle();
    std::vector<ClusterId> labels{0, 0, 1};
    Clustering c(tri, labels);
    CHECK(c.cluster_count() == 2);
    c.move_vertex(2, 0);
    CHECK(c.cluster_count() == 1);
    CHECK_FALSE(c.is_live(1));
    c.check_consistency();
}

TEST_CASE("contract: singleton clustering gives an isomorphic graph") {
    std::mt19937 rng(23);
    Graph g = random_graph(rng, 15, 0.3, true, 0.2);
    auto [coarse, map] = contract(g, Clustering::singletons(g));
    REQUIRE(coarse.vertex_count() == g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        CHECK(map[v] == v);
        CHECK(coarse.degree(v) == doctest::Approx(g.degree(v)).epsilon(1e-12));
        auto na = g.neighbors(v), nb = coarse.neighbors(v);
        REQUIRE(na.size() == nb.size());
        for (std::size_t i = 0; i < na.size(); ++i) CHECK(na[i] == nb[i]);
    }
}

TEST_CASE("contract: two triangles fold to two vertices with self-edges") {
    Graph tt = two_triangles();
    auto labels = triangle_labels();
    Clustering tc(tt, labels);
    auto [coarse, map] = contract(tt, tc);
    REQUIRE(coarse.vertex_count() == 2);
    CHECK(coarse.self_weight(0) == doctest::Approx(6.0));
    CHECK(coarse.self_weight(1) == doctest::Approx(6.0));
    CHECK(coarse.edge_weight(0, 1) == doctest::Approx(1.0));
    CHECK(coarse.degree(0) == doctest::Approx(7.0));
    CHECK(coarse.degree(1) == doctest::Approx(7.0));
    CHECK(coarse.total_weight() == doctest::Approx(tt.total_weight()).epsilon(1e-12));
}

TEST_CASE("contract preserves modularity through projection") {
    std::mt19937 rng(29);
    for (int rep = 0; rep < 40; ++rep) {
        Graph g = random_graph(rng, 4 + rep % 20, 0.35, true, 0.2);
        Clustering c = random_clustering(rng, g, 3);
        auto [coarse, map] = contract(g, c);
        Clustering k = random_clustering(rng, coarse, 2);
        std::vector<ClusterId> projected(g.vertex_count());
        for (VertexId v = 0; v < g.vertex_count(); ++v) projected[v] = k.cluster_of(map[v]);
        Clustering fine(g, projected);
        const double qc = modularity(coarse, k);
        const double qf = modularity(g, fine);
        CHECK(std::abs(qc - qf) <= 1e-12 * std::max(1.0, std::abs(qc)));
    }
}

TEST_CASE("exact solver on the fixtures") {
    Graph tri = triangle();
    ExactResult r = exact_max_modularity(tri);
    CHECK(r.modularity == doctest::Approx(0.0));
    CHECK(r.clustering.cluster_count() == 1);

    Graph tt = two_triangles();
    ExactResult r2 = exact_max_modularity(tt);
    CHECK(r2.modularity == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
    CHECK(r2.clustering.cluster_count() == 2);
    CHECK(r2.clustering.cluster_of(0) == r2.clustering.cluster_of(1));
    CHECK(r2.clustering.cluster_of(0) == r2.clustering.cluster_of(2));
    CHECK(r2.clustering.cluster_of(3) == r2.clustering.cluster_of(4));
    CHECK(r2.clustering.cluster_of(0) != r2.clustering.cluster_of(3));

    GraphBuilder b(1);
    b.add_edge(0, 0, 2.0);
    Graph loop = std::move(b).build();
    ExactResult r3 = exact_max_modularity(loop);
    CHECK(r3.modularity == doctest::Approx(0.0));
    CHECK(r3.clustering.cluster_count() == 1);
}

TEST_CASE("exact solver refuses big graphs") {
    std::mt19937 rng(31);
    Graph g = random_graph(rng, 13, 0.5);
    CHECK_THROWS_AS(exact_max_modularity(g), std::invalid_argument);
}

TEST_CASE("exact solver beats every random clustering") {
    std::mt19937 rng(37);
    for (int rep = 0; rep < 15; ++rep) {
        Graph g = random_graph(rng, 3 + rep % 6, 0.5, true, 0.2);
        ExactResult best = exact_max_modularity(g);
        for (int i = 0; i < 30; ++i) {
            Clustering c = random_clustering(rng, g, 1 + i % 5);
            CHECK(modularity(g, c) <= best.modularity + 1e-12);
        }
    }
}
