#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "modcluster/contract.hpp"
#include "modcluster/multilevel.hpp"
#include "test_util.hpp"

using namespace modcluster;
using namespace modcluster::test;

namespace {

CoarsenerConfig ss_sig() {
    CoarsenerConfig cfg;
    cfg.kind = CoarsenerKind::SingleStep;
    cfg.prioritizer = PrioritizerKind::Sig;
    return cfg;
}

}  // namespace

TEST_CASE("reduction factor must lie in (0, 100]") {
    Graph tri = triangle();
    CHECK_THROWS_AS(build_hierarchy(tri, ss_sig(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_hierarchy(tri, ss_sig(), 101.0), std::invalid_argument);
}

TEST_CASE("reduction factor 100 gives exactly two levels") {
    Graph g = planted_partition(120, 6, 0.4, 0.02, 1001);
    LevelHierarchy h = build_hierarchy(g, ss_sig(), 100.0);
    REQUIRE(h.level_count() == 2);
    CHECK(h.levels[0].vertex_count() == g.vertex_count());
    // second level holds the coarsener's final clustering
    Clustering ss = single_step_greedy(g, PrioritizerKind::Sig);
    CHECK(h.levels[1].vertex_count() == ss.cluster_count());
}

TEST_CASE("levels shrink by at least the reduction factor") {
    std::mt19937 rng(89);
    for (double rf : {25.0, 50.0, 75.0}) {
        Graph g = planted_partition(300, 15, 0.3, 0.01, 1003);
        LevelHierarchy h = build_hierarchy(g, ss_sig(), rf);
        REQUIRE(h.level_count() >= 2);
        for (std::size_t l = 0; l + 1 < h.level_count(); ++l) {
            const double bound = (1.0 - rf / 100.0) * static_cast<double>(h.levels[l].vertex_count());
            if (l + 2 < h.level_count())  // last level may stop short
                CHECK(static_cast<double>(h.levels[l + 1].vertex_count()) <= bound);
        }
        // maps compose into a clustering of the original graph
        for (std::size_t l = 0; l < h.maps.size(); ++l)
            REQUIRE(h.maps[l].size() == h.levels[l].vertex_count());
    }
}

TEST_CASE("a graph that coarsens to one cluster uses at most log levels") {
    // clique: every merge improves Q until one cluster remains
    GraphBuilder b(64);
    for (VertexId u = 0; u < 64; ++u)
        for (VertexId v = u + 1; v < 64; ++v) b.add_edge(u, v);
    Graph g = std::move(b).build();
    LevelHierarchy h = build_hierarchy(g, ss_sig(), 50.0);
    REQUIRE(h.levels.back().vertex_count() == 1);
    CHECK(h.level_count() <= 7u + 1u);  // ceil(log2 64) + 1
}

TEST_CASE("projection through the identity map is the identity") {
    Graph tt = two_triangles();
    auto [coarse, map] = contract(tt, Clustering::singletons(tt));
    Clustering k = Clustering::singletons(coarse);
    Clustering fine = project(tt, k, map);
    CHECK(fine.dense_assignment() == k.dense_assignment());
}

TEST_CASE("projection preserves modularity on the two-triangle fixture") {
    Graph tt = two_triangles();
    auto labels = triangle_labels();
    auto [coarse, map] = contract(tt, Clustering(tt, labels));

    Clustering together = Clustering::single_cluster(coarse);
    Clustering fine_together = project(tt, together, map);
    CHECK(modularity(coarse, together) == doctest::Approx(0.0));
    CHECK(modularity(tt, fine_together) == doctest::Approx(0.0));

    Clustering apart = Clustering::singletons(coarse);
    Clustering fine_apart = project(tt, apart, map);
    CHECK(modularity(coarse, apart) == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
    CHECK(modularity(tt, fine_apart) == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("projection preserves modularity across random hierarchies") {
    std::mt19937 rng(97);
    for (int rep = 0; rep < 10; ++rep) {
        Graph g = random_graph(rng, 60, 0.12, true, 0.1);
        LevelHierarchy h = build_hierarchy(g, ss_sig(), 50.0);
        for (std::size_t l = 0; l + 1 < h.level_count(); ++l) {
            Clustering k = random_clustering(rng, h.levels[l + 1], 3);
            Clustering fine = project(h.levels[l], k, h.maps[l]);
            const double qc = modularity(h.levels[l + 1], k);
            const double qf = modularity(h.levels[l], fine);
            CHECK(std::abs(qc - qf) <= 1e-12 * std::max(1.0, std::abs(qc)));
        }
    }
}

TEST_CASE("projection rejects a mismatched map") {
    Graph tt = two_triangles();
    auto [coarse, map] = contract(tt, Clustering(tt, triangle_labels()));
    Clustering k = Clustering::singletons(coarse);
    std::vector<VertexId> bad(map.begin(), map.end() - 1);
    CHECK_THROWS_AS(project(tt, k, bad), std::invalid_argument);
}

TEST_CASE("a no-op refiner returns the pure coarsening result") {
    std::mt19937 rng(101);
    for (double rf : {30.0, 50.0, 100.0}) {
        Graph g = random_graph(rng, 70, 0.12, true);
        Clustering ml = multi_level_cluster(g, ss_sig(), RefinerKind::None, rf);
        Clustering ss = single_step_greedy(g, PrioritizerKind::Sig);
        CHECK(ml.dense_assignment() == ss.dense_assignment());
    }
}

TEST_CASE("multi-level clustering beats or ties its own coarsening") {
    std::mt19937 rng(103);
    for (int rep = 0; rep < 6; ++rep) {
        Graph g = planted_partition(200, 10, 0.35, 0.02, 2000 + rep);
        const double q_raw =
            modularity(g, multi_level_cluster(g, ss_sig(), RefinerKind::None, 50.0));
        for (RefinerKind kind : {RefinerKind::FastGreedy, RefinerKind::CompleteGreedy,
                                 RefinerKind::KernighanLin}) {
            Clustering c = multi_level_cluster(g, ss_sig(), kind, 50.0);
            c.check_consistency();
            CHECK(modularity(g, c) >= q_raw - 1e-12);
        }
    }
}

TEST_CASE("rf 100 runs the refiner once on the original graph only") {
    Graph g = planted_partition(150, 6, 0.4, 0.02, 3000);
    MultiLevelStats stats;
    multi_level_cluster(g, ss_sig(), RefinerKind::FastGreedy, 100.0, &stats);
    CHECK(stats.level_count == 2);
    REQUIRE(stats.level_vertices.size() == 2);
    CHECK(stats.level_vertices[0] == g.vertex_count());
}

TEST_CASE("multi-step coarsener works under the multi-level driver") {
    Graph g = planted_partition(200, 10, 0.3, 0.02, 4000);
    CoarsenerConfig cfg;
    cfg.kind = CoarsenerKind::MultiStep;
    cfg.prioritizer = PrioritizerKind::MI;
    cfg.merge_fraction = 5.0;
    Clustering c = multi_level_cluster(g, cfg, RefinerKind::FastGreedy, 50.0);
    c.check_consistency();
    CHECK(modularity(g, c) > 0.0);
}

TEST_CASE("multi-level is deterministic") {
    Graph g = planted_partition(180, 9, 0.3, 0.03, 5000);
    Clustering a = multi_level_cluster(g, ss_sig(), RefinerKind::FastGreedy, 50.0);
    Clustering b = multi_level_cluster(g, ss_sig(), RefinerKind::FastGreedy, 50.0);
    CHECK(a.dense_assignment() == b.dense_assignment());
}
