#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "ilap/gallery.hpp"
#include "ilap/search.hpp"

using namespace ilap;
using testing::Rng;

TEST_CASE("construction rejects self-loops and collapses duplicates") {
    std::vector<Edge> edges = {{0, 1}, {1, 0}, {1, 2}};
    Graph g = Graph::materialized(edges);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 0));

    std::vector<Edge> loop = {{2, 2}};
    CHECK_THROWS_AS(Graph::materialized(loop), InputError);
}

TEST_CASE("multi-source distance on a path") {
    Graph g = Graph::materialized(testing::path_edges(4));
    std::vector<Vertex> from = {0, 4};
    auto r = distance(g, from, 2);
    CHECK(r.exact());
    CHECK(*r.hops == 2);

    std::vector<Vertex> self = {3};
    CHECK(*distance(g, self, 3).hops == 0);

    CHECK_THROWS_AS(distance(g, std::vector<Vertex>{}, 1), InputError);
    CHECK_THROWS_AS(distance(g, from, 99), InputError);
}

TEST_CASE("the hub of the doubling graph touches everything") {
    auto dg = gallery::doubling_graph(16);
    const Graph& g = dg.problem.graph_ref();
    std::vector<Vertex> from = {0};
    auto r = distance(g, from, 12);
    CHECK(r.hops.has_value());
    CHECK(*r.hops == 1);
}

TEST_CASE("distance through incomplete territory is flagged") {
    // Window of the integer line: radius 3 around 0.
    auto line = [](Vertex v) { return std::vector<Vertex>{v - 1, v + 1}; };
    Graph g = Graph::from_oracle(0, 3, line);
    CHECK(g.vertex_count() == 7);
    CHECK(g.complete(0));
    CHECK(g.complete(2));
    CHECK_FALSE(g.complete(3));
    CHECK_FALSE(g.complete(-3));

    std::vector<Vertex> from = {0};
    auto near = distance(g, from, 3);
    CHECK(near.exact());  // no unexposed route can beat 3 hops
    CHECK(*near.hops == 3);

    std::vector<Vertex> end = {-3};
    auto across = distance(g, end, 3);
    CHECK(across.hops.has_value());
    CHECK(*across.hops == 6);
    CHECK(across.truncation_limited);  // a shortcut outside the window is conceivable
    CHECK(across.lower_bound == 2);
}

TEST_CASE("boundary of a set") {
    Graph g = Graph::materialized(testing::path_edges(4));
    std::vector<Vertex> x = {1, 2, 3};
    CHECK(boundary_of(g, x) == std::vector<Vertex>{0, 4});
    CHECK(boundary_of(g, std::vector<Vertex>{}).empty());
}

TEST_CASE("comb boundary is the set of tips") {
    auto comb = gallery::comb_graph(2, 3);
    std::vector<Vertex> tips = boundary_of(comb.problem.graph_ref(), comb.problem.partition.interior);
    std::vector<Vertex> expected;
    for (std::int64_t n = 0; n < 3; ++n) {
        expected.push_back(comb.id(n, static_cast<std::int64_t>(comb.tooth_length(n))));
    }
    std::sort(expected.begin(), expected.end());
    CHECK(tips == expected);
}

TEST_CASE("width of simple sets") {
    Graph path = Graph::materialized(testing::path_edges(4));
    std::vector<Vertex> x = {1, 2, 3};
    auto w = width_of(path, x);
    CHECK_FALSE(w.truncation_limited);
    CHECK(*w.value == 2);
    CHECK(*w.witness == 2);

    // 5x5 grid, interior 3x3 block: the center sits two steps from the ring.
    std::vector<Edge> grid;
    auto id = [](int i, int j) { return Vertex(5 * i + j); };
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            if (i + 1 < 5) {
                grid.emplace_back(id(i, j), id(i + 1, j));
            }
            if (j + 1 < 5) {
                grid.emplace_back(id(i, j), id(i, j + 1));
            }
        }
    }
    Graph gg = Graph::materialized(grid);
    std::vector<Vertex> inner;
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            inner.push_back(id(i, j));
        }
    }
    auto wg = width_of(gg, inner);
    CHECK(*wg.value == 2);
    CHECK(*wg.witness == id(2, 2));
}

TEST_CASE("comb width grows with the truncation") {
    auto small = gallery::comb_graph(2, 3);
    auto large = gallery::comb_graph(2, 4);
    auto ws = width_of(small.problem.graph_ref(), small.problem.partition.interior);
    auto wl = width_of(large.problem.graph_ref(), large.problem.partition.interior);
    CHECK(ws.truncation_limited);
    CHECK(wl.truncation_limited);
    REQUIRE(ws.value.has_value());
    REQUIRE(wl.value.has_value());
    CHECK(*wl.value > *ws.value);
}

TEST_CASE("balls") {
    Graph path = Graph::materialized(testing::path_edges(4));
    auto b = ball(path, 2, 2);
    CHECK(b.members == std::vector<Vertex>{1, 2, 3});
    CHECK_FALSE(b.truncation_limited);

    auto unit = ball(path, 2, 1);
    CHECK(unit.members == std::vector<Vertex>{2});

    CHECK_THROWS_AS(ball(path, 2, 0), InputError);

    auto dg = gallery::doubling_graph(16);
    auto hub_ball = ball(dg.problem.graph_ref(), 0, 2);
    CHECK(hub_ball.members.size() == dg.problem.graph_ref().vertex_count());
    CHECK(hub_ball.truncation_limited);
}

TEST_CASE("distance symmetry and triangle inequality on random graphs") {
    Rng rng(20240811);
    for (int trial = 0; trial < 25; ++trial) {
        std::int64_t n = rng.pick(3, 40);
        Graph g = Graph::materialized(testing::random_connected_edges(rng, n));
        for (int probe = 0; probe < 10; ++probe) {
            Vertex a = rng.pick(0, n - 1);
            Vertex b = rng.pick(0, n - 1);
            Vertex c = rng.pick(0, n - 1);
            std::vector<Vertex> sa{a}, sb{b}, sc{c};
            int dab = *distance(g, sa, b).hops;
            int dba = *distance(g, sb, a).hops;
            CHECK(dab == dba);
            int dac = *distance(g, sa, c).hops;
            int dbc = *distance(g, sb, c).hops;
            CHECK(dac <= dab + dbc);
        }
    }
}

TEST_CASE("width agrees with per-vertex single-source searches") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        std::int64_t n = rng.pick(6, 60);
        Graph g = Graph::materialized(testing::random_connected_edges(rng, n));
        std::vector<Vertex> x;
        for (Vertex v = 0; v < n; ++v) {
            if (rng.flip(0.6)) {
                x.push_back(v);
            }
        }
        if (x.empty() || x.size() == static_cast<std::size_t>(n)) {
            continue;
        }
        auto w = width_of(g, x);
        std::vector<Vertex> bd = boundary_of(g, x);
        int expect = 0;
        bool all = true;
        for (Vertex v : x) {
            auto d = distance(g, bd, v);
            if (!d.hops) {
                all = false;
                break;
            }
            expect = std::max(expect, *d.hops);
        }
        if (!all) {
            CHECK_FALSE(w.value.has_value());
        } else {
            CHECK(*w.value == expect);
        }
    }
}

TEST_CASE("diameter of a set") {
    Graph path = Graph::materialized(testing::path_edges(6));
    std::vector<Vertex> x = {0, 3, 6};
    auto d = diameter(path, x);
    CHECK(*d.value == 6);
}

TEST_CASE("partition construction validates reachability and width") {
    Graph path = Graph::materialized(testing::path_edges(4));
    Partition p = make_partition(path, {1, 2, 3});
    CHECK(p.boundary == std::vector<Vertex>{0, 4});
    CHECK(*p.width_bound == 2);
    CHECK_FALSE(p.reachability_truncation_limited);

    // Two components, one without boundary: rejected on a materialized graph.
    std::vector<Edge> two = {{0, 1}, {2, 3}};
    Graph g2 = Graph::materialized(two);
    CHECK_THROWS_AS(make_partition(g2, {1, 2, 3}), InputError);

    CHECK_THROWS_AS(make_partition(path, {1, 2, 99}), InputError);
    CHECK_THROWS_AS(make_partition(path, std::vector<Vertex>{1, 2, 3}, 1), InputError);
}
