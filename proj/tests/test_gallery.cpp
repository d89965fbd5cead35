#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ilap/calculus.hpp"
#include "ilap/gallery.hpp"
#include "ilap/search.hpp"
#include "ilap/solver.hpp"

using namespace ilap;

TEST_CASE("sign-change example matches the figure") {
    auto ex = gallery::sign_change_example();
    CHECK(ex.problem.f.at(5) == doctest::Approx(-2.0));
    CHECK(ex.problem.f.at(6) == doctest::Approx(-2.0));
    CHECK(ex.problem.f.at(1) == doctest::Approx(2.0));
    CHECK(ex.problem.f.at(2) == doctest::Approx(2.0));

    CHECK(residual(ex.problem, ex.u).sup_norm == doctest::Approx(0.0));
    for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        CHECK(residual(ex.problem, ex.shifted(a)).sup_norm <= 1e-12);
    }
    // Outside the stated range the shifted field is no longer a solution.
    CHECK(residual(ex.problem, ex.shifted(1.5)).sup_norm > 0.1);

    double gap = 0.0;
    ScalarField hi = ex.shifted(1.0);
    ScalarField lo = ex.shifted(-1.0);
    for (Vertex v : ex.problem.graph_ref().vertices()) {
        gap = std::max(gap, std::abs(hi.at(v) - lo.at(v)));
    }
    CHECK(gap == doctest::Approx(2.0));
}

TEST_CASE("doubling graph carries one bounded and one unbounded solution") {
    auto dg = gallery::doubling_graph(1 << 10);
    const Graph& g = dg.problem.graph_ref();
    std::size_t checked = 0;
    for (Vertex x : dg.problem.partition.interior) {
        if (!g.complete(x)) {
            continue;
        }
        CHECK(inf_laplacian(dg.u, g, x).value == doctest::Approx(0.0));
        ++checked;
    }
    CHECK(checked == (1 << 10) / 2);
    CHECK(residual(dg.problem, dg.v).sup_norm == doctest::Approx(0.0));

    // Hub adjacency keeps the width at one despite the unbounded field.
    auto w = width_of(g, dg.problem.partition.interior);
    REQUIRE(w.value.has_value());
    CHECK(*w.value == 1);
    CHECK(w.truncation_limited);
}

TEST_CASE("comb tails are certified and telescope exactly") {
    auto comb = gallery::comb_graph(2, 4);
    // v(0,0) = 8 * sum_{k>=2} k^{-3} = 8 (zeta(3) - 1).
    const double zeta3 = 1.2020569031595942854;
    double expect = 8.0 * (zeta3 - 1.0);
    CHECK(std::abs(comb.shaft_values[0] - expect) <= 1e-12);
    CHECK(comb.shaft_values[0] == doctest::Approx(1.61645522527675));

    // u vanishes at every tip and solves on complete vertices.
    const Graph& g = comb.problem.graph_ref();
    for (std::int64_t n = 0; n < 4; ++n) {
        CHECK(comb.u.at(comb.id(n, static_cast<std::int64_t>(comb.tooth_length(n)))) == 0.0);
    }
    CHECK(residual(comb.problem, comb.u).interior_sup <= 1e-12);
    CHECK(residual(comb.problem, comb.v).interior_sup <= 1e-12);

    for (std::int64_t n = 1; n < 3; ++n) {
        if (!g.complete(comb.id(n, 0))) {
            continue;
        }
        double lap = inf_laplacian(comb.v, g, comb.id(n, 0)).value;
        CHECK(std::abs(lap + 1.0 / comb.tooth_length(n)) <= 1e-12);
        CHECK(comb.shaft_margin(n) > 0.0);
    }
}

TEST_CASE("comb windows scale to many teeth") {
    auto comb = gallery::comb_graph(2, 500, 1);
    const Graph& g = comb.problem.graph_ref();
    std::size_t complete_shafts = 0;
    for (std::int64_t n = 1; n < 499; ++n) {
        Vertex shaft = comb.id(n, 0);
        if (!g.complete(shaft)) {
            continue;
        }
        ++complete_shafts;
        double lap = inf_laplacian(comb.v, g, shaft).value;
        CHECK(std::abs(lap + 1.0 / comb.tooth_length(n)) <= 1e-12);
    }
    CHECK(complete_shafts == 498);
    for (std::int64_t n = 1; n < 500; ++n) {
        CHECK(comb.shaft_margin(n) > 0.0);
    }
    // The second solution stays bounded by its certified upper bound.
    CHECK(comb.v.max_value() <= *comb.v.known_upper_bound);
}

TEST_CASE("two-rail window values") {
    auto ex = gallery::cca_counterexample(0.3, 4);
    const Graph& g = *ex.graph;
    CHECK(inf_laplacian(ex.u, g, ex.center).value == doctest::Approx(0.4));
    auto half = gallery::cca_counterexample(0.5, 4);
    CHECK(inf_laplacian(half.u, *half.graph, half.center).value == doctest::Approx(0.0));

    // Rail vertices stay harmonic for any admissible center value.
    for (double a : {0.0, 0.3, 1.0}) {
        auto w = gallery::cca_counterexample(a, 4);
        for (std::int64_t k = -3; k <= 3; ++k) {
            CHECK(inf_laplacian(w.u, *w.graph, w.top(k)).value == doctest::Approx(0.0));
            CHECK(inf_laplacian(w.u, *w.graph, w.bottom(k)).value == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("closed truncations of the negative-f half-line blow up quadratically") {
    auto report = gallery::nonexistence_witness(32);
    REQUIRE(report.entries.size() == 4);  // r = 4, 8, 16, 32
    CHECK(report.entries[0].sup_norm == doctest::Approx(2.0).epsilon(1e-6));
    for (std::size_t k = 0; k < report.entries.size(); ++k) {
        const auto& e = report.entries[k];
        CHECK(e.sup_norm == doctest::Approx(e.closed_form).epsilon(1e-6));
        CHECK(e.closed_form == doctest::Approx(e.truncation * e.truncation / 8.0));
        if (k > 0) {
            CHECK(e.sup_norm > report.entries[k - 1].sup_norm);
        }
    }

    // The stated closed form at r = 10.
    DirichletProblem p = testing::path_problem(10, 0.0, 0.0, -1.0);
    SolveOptions opts;
    opts.tol = 1e-11;
    SolveOutcome out = solve(p, opts);
    CHECK(out.u.at(5) == doctest::Approx(12.5).epsilon(1e-7));
    CHECK(out.u.at(2) == doctest::Approx(2.0 * 8.0 / 2.0).epsilon(1e-7));
}
