#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ilap/barrier.hpp"
#include "ilap/calculus.hpp"

using namespace ilap;
using testing::Rng;

TEST_CASE("quadratic profiles") {
    BarrierSpec s{1.0, 3.0, 1.0, 2};
    CHECK(quad_upper(s, 0) == doctest::Approx(1.0));
    CHECK(quad_upper(s, 1) == doctest::Approx(4.0));
    CHECK(quad_upper(s, 2) == doctest::Approx(6.0));
    CHECK(quad_lower(s, 2) == doctest::Approx(-4.0));
}

TEST_CASE("anchored barrier on a path") {
    // Path 0..3, boundary {0}, g(0)=5, c=1; width 3, R=1 gives b = 14 and
    // profile (5, 19, 32, 44).
    auto graph = std::make_shared<Graph>(Graph::materialized(testing::path_edges(3)));
    Partition part = make_partition(*graph, {1, 2, 3});
    REQUIRE(*part.width_bound == 3);
    ScalarField g;
    g.set(0, 5.0);

    auto res = barrier_field(*graph, part, g, 0, 1.0, 1, Side::Upper);
    CHECK(res.spec.a == doctest::Approx(5.0));
    CHECK(res.spec.b == doctest::Approx(14.0));
    CHECK(res.field.at(0) == doctest::Approx(5.0));
    CHECK(res.field.at(1) == doctest::Approx(19.0));
    CHECK(res.field.at(2) == doctest::Approx(32.0));
    CHECK(res.field.at(3) == doctest::Approx(44.0));
    CHECK(-inf_laplacian(res.field, *res.augmented.graph, 1).value == doctest::Approx(1.0));
}

TEST_CASE("constant data with c = 0 gives a cone of slope twice the norm") {
    auto graph = std::make_shared<Graph>(Graph::materialized(testing::path_edges(3)));
    Partition part = make_partition(*graph, {1, 2, 3});
    double gamma = -1.25;
    ScalarField g;
    g.set(0, gamma);
    auto res = barrier_field(*graph, part, g, 0, 0.0, 1, Side::Upper);
    for (Vertex k = 0; k <= 3; ++k) {
        CHECK(res.field.at(k) == doctest::Approx(gamma + 2.0 * std::abs(gamma) * k));
    }
}

TEST_CASE("radial quadratics are monotone with the stated operator bounds") {
    // Spec example: a=0, b=3, c=1, R=2, anchored at one end of a path.
    Graph path = Graph::materialized(testing::path_edges(5));
    BarrierSpec s{0.0, 3.0, 1.0, 2};
    std::vector<Vertex> anchor = {0};
    ScalarField q = radial_quadratic(path, anchor, s, Side::Upper);
    CHECK(q.at(0) == doctest::Approx(0.0));
    CHECK(q.at(1) == doctest::Approx(3.0));
    CHECK(q.at(2) == doctest::Approx(5.0));
    CHECK(q.at(1) > q.at(0));
    CHECK(q.at(2) > q.at(1));

    Rng rng(2025);
    for (int trial = 0; trial < 50; ++trial) {
        int radius = static_cast<int>(rng.pick(1, 6));
        double c = rng.real(0.0, 2.0);
        double b = radius * c + rng.real(0.01, 3.0);  // b > R c
        BarrierSpec spec{rng.real(-5.0, 5.0), b, c, radius};
        Graph g = Graph::materialized(testing::path_edges(radius + 2));
        ScalarField up = radial_quadratic(g, anchor, spec, Side::Upper);
        ScalarField lo = radial_quadratic(g, anchor, spec, Side::Lower);
        for (int d = 1; d <= radius; ++d) {
            CHECK(up.at(d) > up.at(d - 1));
            CHECK(lo.at(d) < lo.at(d - 1));
            // Path vertices at 1 <= d <= R have neighbors at d-1 and d+1.
            CHECK(inf_laplacian(lo, g, d).value >= c - kDefaultTolerance);
            CHECK(-inf_laplacian(up, g, d).value >= c - kDefaultTolerance);
        }
    }
}

TEST_CASE("barrier guarantees on random graphs") {
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        DirichletProblem p = testing::random_problem(rng, rng.pick(5, 24), -1.0, 1.0);
        double c = rng.real(0.0, 2.0);
        int radius = static_cast<int>(rng.pick(1, 3));
        Vertex y0 = p.partition.boundary[static_cast<std::size_t>(
            rng.pick(0, static_cast<std::int64_t>(p.partition.boundary.size()) - 1))];
        for (Side side : {Side::Upper, Side::Lower}) {
            auto res = barrier_field(p.graph_ref(), p.partition, p.g, y0, c, radius, side);
            const Graph& aug = *res.augmented.graph;
            if (radius == 1) {
                CHECK(res.field.at(y0) == doctest::Approx(p.g.at(y0)));
            }
            for (Vertex x : p.partition.interior) {
                double lap = inf_laplacian(res.field, aug, x).value;
                if (side == Side::Upper) {
                    CHECK(-lap >= c - 1e-9);
                } else {
                    CHECK(lap >= c - 1e-9);
                }
            }
            for (Vertex y : p.partition.boundary) {
                if (side == Side::Upper) {
                    CHECK(res.field.at(y) >= p.g.at(y) - 1e-9);
                } else {
                    CHECK(res.field.at(y) <= p.g.at(y) + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("envelopes match the boundary data exactly and stay one-sided") {
    Rng rng(505);
    for (int trial = 0; trial < 30; ++trial) {
        DirichletProblem p = testing::random_problem(rng, rng.pick(5, 20), -1.0, 1.0);
        double c = p.f_sup_norm();
        ScalarField up = barrier_envelope(p, c, Side::Upper);
        ScalarField lo = barrier_envelope(p, c, Side::Lower);
        for (Vertex y : p.partition.boundary) {
            CHECK(up.at(y) == doctest::Approx(p.g.at(y)));
            CHECK(lo.at(y) == doctest::Approx(p.g.at(y)));
        }
        for (Vertex x : p.partition.interior) {
            CHECK(-inf_laplacian(up, p.graph_ref(), x).value >= c - 1e-9);
            CHECK(inf_laplacian(lo, p.graph_ref(), x).value >= c - 1e-9);
            CHECK(up.at(x) >= lo.at(x) - 1e-9);
        }
        CHECK(is_supersolution(p, up));
        CHECK(is_subsolution(p, lo));
    }
}

TEST_CASE("radial fields refuse windows whose distances are unreliable") {
    auto line = [](Vertex v) { return std::vector<Vertex>{v - 1, v + 1}; };
    Graph win = Graph::from_oracle(0, 3, line);
    BarrierSpec s{0.0, 1.0, 0.0, 1};
    // From the center every exposed distance is safe.
    std::vector<Vertex> mid = {0};
    CHECK_NOTHROW(radial_quadratic(win, mid, s, Side::Upper));
    // From a truncated corner the far side could be short-circuited.
    std::vector<Vertex> corner = {-3};
    CHECK_THROWS_AS(radial_quadratic(win, corner, s, Side::Upper), TruncationError);
}

TEST_CASE("barrier preconditions") {
    auto graph = std::make_shared<Graph>(Graph::materialized(testing::path_edges(3)));
    Partition part = make_partition(*graph, {1, 2, 3});
    ScalarField g;
    g.set(0, 1.0);
    CHECK_THROWS_AS(barrier_field(*graph, part, g, 0, -1.0, 1, Side::Upper), InputError);
    CHECK_THROWS_AS(barrier_field(*graph, part, g, 0, 1.0, 0, Side::Upper), InputError);
    CHECK_THROWS_AS(barrier_field(*graph, part, g, 2, 1.0, 1, Side::Upper), InputError);

    Partition no_width = part;
    no_width.width_bound.reset();
    CHECK_THROWS_AS(barrier_field(*graph, no_width, g, 0, 1.0, 1, Side::Upper),
                    PreconditionError);
}
