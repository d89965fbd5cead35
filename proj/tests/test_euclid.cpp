#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ilap/euclid.hpp"
#include "ilap/search.hpp"

using namespace ilap;
using namespace ilap::euclid;

TEST_CASE("unit square sampling counts") {
    DomainSpec spec = DomainSpec::box2d({0, 0}, {1, 1});
    DomainSample s = sample_domain(spec, 0.25);
    CHECK(s.n_interior == 9);
    CHECK(s.size() - s.n_interior == 16);
    CHECK(s.convex);
    CHECK(s.width == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("interval sampling counts") {
    DomainSpec spec = DomainSpec::interval(0.0, 1.0);
    DomainSample s = sample_domain(spec, 0.1);
    CHECK(s.n_interior == 9);
    CHECK(s.size() - s.n_interior == 2);
    CHECK(s.width == doctest::Approx(0.5).epsilon(2 * 0.1));
}

TEST_CASE("annulus width is half the gap") {
    DomainSpec spec = DomainSpec::annulus({0, 0}, 1.0, 2.0);
    DomainSample s = sample_domain(spec, 0.1);
    CHECK(std::abs(s.width - 0.5) <= 2 * 0.1);
    CHECK_FALSE(s.convex);
}

TEST_CASE("intrinsic distances: convex shortcut vs grid metric") {
    DomainSpec spec = DomainSpec::box2d({0, 0}, {1, 1});
    DomainSample s = sample_domain(spec, 0.05);
    std::size_t a = s.nearest({0.0, 0.0});
    std::size_t b = s.nearest({1.0, 1.0});
    double direct = intrinsic_distance(s, a, b);
    CHECK(direct == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
    double grid = fine_grid_distance(s, a, b);
    CHECK(grid >= direct - 1e-12);
    CHECK(grid <= direct * 1.04);
    CHECK(intrinsic_distance(s, a, a) == 0.0);
}

TEST_CASE("the reentrant corner forces a detour") {
    DomainSpec spec = DomainSpec::l_shape({0, 0}, {2, 2}, 1.0, 1.0);
    DomainSample s = sample_domain(spec, 0.05);
    std::size_t a = s.nearest({1.8, 0.5});
    std::size_t b = s.nearest({0.5, 1.8});
    Point pa = s.points[a];
    Point pb = s.points[b];
    double euclidean = std::hypot(pb.x - pa.x, pb.y - pa.y);
    double around = std::hypot(pa.x - 1.0, pa.y - 1.0) + std::hypot(pb.x - 1.0, pb.y - 1.0);
    double grid = intrinsic_distance(s, a, b);
    CHECK(grid > euclidean + 0.01);
    CHECK(grid >= around - 1e-9);
    CHECK(grid <= around * 1.04);
}

TEST_CASE("eps-graph adjacency follows the intrinsic metric") {
    DomainSpec spec = DomainSpec::interval(0.0, 1.0);
    spec.g = FnSpec::linear(1.0, 0.0, 0.0);
    DomainSample s = sample_domain(spec, 0.01);
    EpsGraphBundle bundle = build_eps_graph(s, 0.2, spec.f, spec.g);
    auto near_a = static_cast<Vertex>(s.nearest({0.30, 0}));
    auto near_b = static_cast<Vertex>(s.nearest({0.45, 0}));
    CHECK(bundle.graph->adjacent(near_a, near_b));

    EpsGraphBundle fine = build_eps_graph(s, 0.1, spec.f, spec.g);
    auto far_b = static_cast<Vertex>(s.nearest({0.65, 0}));
    std::vector<Vertex> from{near_a};
    auto hops = distance(*fine.graph, from, far_b);
    REQUIRE(hops.hops.has_value());
    CHECK(*hops.hops == 4);  // floor(0.35 / 0.1) + 1

    CHECK(fine.w_hops == static_cast<int>(std::floor(fine.measured_width / 0.1)) + 1);
    CHECK(fine.hop_width == fine.w_hops);  // the formula matches the measured graph here
    CHECK(std::abs(fine.measured_width - 0.5) <= 2 * s.h);
}

TEST_CASE("the spacing rule h <= eps/10 is enforced") {
    DomainSpec spec = DomainSpec::interval(0.0, 1.0);
    DomainSample s = sample_domain(spec, 0.05);
    CHECK_THROWS_AS(build_eps_graph(s, 0.2, spec.f, spec.g), PreconditionError);
    CHECK_NOTHROW(build_eps_graph(s, 0.5, spec.f, spec.g));
}

TEST_CASE("uniform bound check") {
    DomainSpec spec = DomainSpec::interval(0.0, 1.0);
    spec.g = FnSpec::linear(1.0, 0.0, 0.0);
    DomainSample s = sample_domain(spec, 0.02);
    EpsGraphBundle bundle = build_eps_graph(s, 0.2, spec.f, spec.g);
    SolveOutcome out = solve(bundle.problem);
    REQUIRE(out.converged);
    auto check = uniform_bound_check(bundle, out);
    CHECK(check.ok);
    CHECK(check.bound == doctest::Approx(1.0));  // f == 0: the bound is ||g||

    // Corrupt the field: the check must fail.
    SolveOutcome bad = out;
    bad.u.set(0, 50.0);
    CHECK_FALSE(uniform_bound_check(bundle, bad).ok);
}

TEST_CASE("slab and punctured windows sample with warnings") {
    DomainSpec slab = DomainSpec::slab({0.0, 0.1, 0.0, -0.1}, {1.0, 1.1, 1.0, 0.9}, 2.0);
    DomainSample s1 = sample_domain(slab, 0.1);
    CHECK(s1.periodic_x);
    CHECK_FALSE(s1.warnings.empty());
    CHECK(s1.n_interior > 0);

    DomainSpec punct = DomainSpec::punctured_box(2.0, 1.0);
    DomainSample s2 = sample_domain(punct, 0.125);
    CHECK(s2.periodic_x);
    CHECK(s2.periodic_y);
    CHECK(s2.size() - s2.n_interior == 4);  // the four lattice points in the window
    CHECK(s2.n_interior == 16 * 16 - 4);    // seam columns are not duplicated
    // Width of the punctured plane window: half the cell diagonal.
    CHECK(std::abs(s2.width - std::sqrt(0.5)) <= 2 * s2.h);
}

TEST_CASE("a pinched slab splits and the largest component is kept") {
    DomainSpec spec = DomainSpec::slab({0.0, 3.0, 0.0, 3.0}, {1.0, 1.0, 1.0, 1.0}, 4.0);
    DomainSample s = sample_domain(spec, 0.1);
    bool split_warning = false;
    for (const auto& w : s.warnings) {
        split_warning = split_warning || w.find("components") != std::string::npos;
    }
    CHECK(split_warning);
    CHECK(s.n_interior > 0);
}

TEST_CASE("degenerate shapes with no interior are rejected") {
    DomainSpec spec = DomainSpec::interval(0.0, 0.05);
    CHECK_THROWS_AS(sample_domain(spec, 0.1), InputError);
}

TEST_CASE("short convergence run on the interval") {
    DomainSpec spec = DomainSpec::interval(0.0, 1.0);
    spec.g = FnSpec::linear(1.0, 0.0, 0.0);
    spec.exact = FnSpec::linear(1.0, 0.0, 0.0);
    std::vector<double> schedule = {0.3, 0.2};
    ConvergenceOptions opts;
    opts.h_divisor = 12.0;
    ConvergenceReport rep = convergence_run(spec, schedule, opts);
    REQUIRE(rep.levels.size() == 2);
    for (const auto& lv : rep.levels) {
        CHECK(lv.failure.empty());
        CHECK(lv.converged);
        CHECK(lv.bound_ok);
        REQUIRE(lv.exact_error.has_value());
        CHECK(*lv.exact_error <= 2.0 * lv.eps);
    }
    CHECK(rep.levels[1].cauchy.has_value());
    CHECK_FALSE(rep.probes.empty());
}

TEST_CASE("without a registered exact solution the error column is absent") {
    DomainSpec spec = DomainSpec::interval(0.0, 1.0);
    spec.g = FnSpec::linear(1.0, 0.0, 0.0);
    std::vector<double> schedule = {0.3, 0.2};
    ConvergenceOptions opts;
    opts.h_divisor = 12.0;
    ConvergenceReport rep = convergence_run(spec, schedule, opts);
    REQUIRE(rep.levels.size() == 2);
    CHECK_FALSE(rep.levels[0].exact_error.has_value());
    CHECK_FALSE(rep.levels[1].exact_error.has_value());
    CHECK(rep.levels[1].cauchy.has_value());
}

TEST_CASE("schedules must decrease") {
    DomainSpec spec = DomainSpec::interval(0.0, 1.0);
    std::vector<double> bad = {0.1, 0.2};
    CHECK_THROWS_AS(convergence_run(spec, bad), InputError);
}
