#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "ilap/calculus.hpp"
#include "ilap/gallery.hpp"
#include "ilap/io.hpp"

using namespace ilap;
using io::json;

TEST_CASE("graph round-trip preserves structure") {
    testing::Rng rng(3);
    Graph g = Graph::materialized(testing::random_connected_edges(rng, 17));
    json j = io::graph_to_json(g);
    auto back = io::graph_from_json(j);
    CHECK(back->vertices() == g.vertices());
    CHECK(back->edge_count() == g.edge_count());
    for (Vertex v : g.vertices()) {
        auto a = g.neighbors(v);
        auto b = back->neighbors(v);
        CHECK(std::vector<Vertex>(a.begin(), a.end()) == std::vector<Vertex>(b.begin(), b.end()));
    }
    CHECK(io::graph_to_json(*back) == j);
}

TEST_CASE("truncated graphs carry their incomplete list") {
    auto dg = gallery::doubling_graph(8);
    json j = io::graph_to_json(dg.problem.graph_ref());
    auto back = io::graph_from_json(j);
    CHECK(back->has_incomplete());
    CHECK(back->incomplete_vertices() == dg.problem.graph_ref().incomplete_vertices());
}

TEST_CASE("bad graph files are rejected") {
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"vertices": [0]})")), InputError);
    CHECK_THROWS_AS(
        io::graph_from_json(json::parse(R"({"vertices": [0, 1], "edges": [[0, 0]]})")),
        InputError);
    CHECK_THROWS_AS(
        io::graph_from_json(json::parse(R"({"vertices": [0, 1], "edges": [[0, 7]]})")),
        InputError);
}

TEST_CASE("problem round-trip") {
    DirichletProblem p = testing::path_problem(4, 0.0, 2.0, -1.0);
    json j = io::problem_to_json(p);
    DirichletProblem q = io::problem_from_json(j);
    CHECK(q.partition.interior == p.partition.interior);
    CHECK(q.partition.boundary == p.partition.boundary);
    for (Vertex x : p.partition.interior) {
        CHECK(q.f.at(x) == p.f.at(x));
    }
    for (Vertex y : p.partition.boundary) {
        CHECK(q.g.at(y) == p.g.at(y));
    }
    CHECK(io::problem_to_json(q) == j);
}

TEST_CASE("game round-trip") {
    auto graph = std::make_shared<Graph>(Graph::materialized(testing::path_edges(4)));
    ScalarField r = ScalarField::constant(std::vector<Vertex>{1, 2, 3}, 0.25);
    ScalarField g;
    g.set(0, 0.0);
    g.set(4, 1.0);
    GameConfig cfg = make_game(graph, {1, 2, 3}, std::move(r), std::move(g), 2, 5000);
    json j = io::game_to_json(cfg);
    GameConfig back = io::game_from_json(j);
    CHECK(back.start == 2);
    CHECK(back.max_rounds == 5000);
    CHECK(back.running.at(2) == 0.25);
    CHECK(io::game_to_json(back) == j);
}

TEST_CASE("field CSV formatting") {
    ScalarField f;
    f.set(2, 0.5);
    f.set(0, 1.0 / 3.0);
    std::string csv = io::field_to_csv(f);
    CHECK(csv == "vertex,value\n0,0.33333333333333331\n2,0.5\n");
}

TEST_CASE("function and domain specs round-trip") {
    euclid::DomainSpec d = euclid::DomainSpec::annulus({0.5, -1.0}, 1.0, 2.0);
    d.f = euclid::FnSpec::constant(-2.0);
    d.g = euclid::FnSpec::cone({0.5, -1.0}, 0.25, 1.5);
    d.exact = euclid::FnSpec::poly1d({0.0, 1.0, -1.0});
    json j = io::domain_to_json(d);
    euclid::DomainSpec back = io::domain_from_json(j);
    CHECK(io::domain_to_json(back) == j);
    CHECK(back.f.eval({3.0, 0.0}) == -2.0);
    CHECK(back.g.eval({2.5, -1.0}) == doctest::Approx(0.25 + 1.5 * 2.0));
    CHECK(back.exact->eval({0.25, 0.0}) == doctest::Approx(0.25 * 0.75));
}

TEST_CASE("manifest is deterministic and seed-aware") {
    json a = io::make_manifest("solve", {"--tol", "1e-9"}, "input-bytes", 0, false);
    json b = io::make_manifest("solve", {"--tol", "1e-9"}, "input-bytes", 0, false);
    CHECK(a == b);
    CHECK_FALSE(a.contains("seed"));
    json c = io::make_manifest("simulate", {}, "x", 17, true);
    CHECK(c.at("seed") == 17);
    CHECK(a.at("input_fnv1a64") != c.at("input_fnv1a64"));
}

TEST_CASE("gallery problems survive a file round-trip") {
    auto ex = gallery::sign_change_example();
    json j = io::problem_to_json(ex.problem);
    DirichletProblem back = io::problem_from_json(j);
    CHECK(residual(back, ex.u).sup_norm <= 1e-12);
}
