#include "ilap/gallery.hpp"

#include <algorithm>
#include <cmath>

#include "ilap/calculus.hpp"
#include "ilap/solver.hpp"

namespace ilap {
namespace gallery {

SignChangeExample sign_change_example() {
    // Bottom rail 0-1-2-3, top rail 4-5-6-7, rungs 1~5 and 2~6.
    std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6},
                               {6, 7}, {1, 5}, {2, 6}};
    auto graph = std::make_shared<Graph>(Graph::materialized(edges));
    std::vector<Vertex> interior = {1, 2, 5, 6};

    SignChangeExample ex;
    ex.u = ScalarField::constant(graph->vertices(), 0.0);
    ex.u.set(1, -1.0);
    ex.u.set(2, -1.0);
    ex.u.set(5, 1.0);
    ex.u.set(6, 1.0);

    ScalarField f;
    for (Vertex x : interior) {
        f.set(x, inf_laplacian(ex.u, *graph, x).value);
    }
    ScalarField g;
    for (Vertex y : {0, 3, 4, 7}) {
        g.set(y, 0.0);
    }
    ex.problem = make_problem(graph, interior, std::move(f), std::move(g));
    return ex;
}

ScalarField SignChangeExample::shifted(double a) const {
    ScalarField out = u;
    for (Vertex x : problem.partition.interior) {
        out.set(x, u.at(x) + a);
    }
    return out;
}

DoublingGraph doubling_graph(std::int64_t n) {
    if (n < 4) {
        throw InputError("doubling_graph: n must be >= 4");
    }
    if (n > 64'000'000) {
        throw InputError("doubling_graph: truncation size " + std::to_string(n) +
                         " is beyond desk scale");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n + n / 2));
    for (std::int64_t k = 1; k <= n; ++k) {
        edges.emplace_back(0, k);
        if (2 * k <= n) {
            edges.emplace_back(k, 2 * k);
        }
    }
    std::vector<Vertex> incomplete = {0};
    for (std::int64_t k = 1; k <= n; ++k) {
        if (2 * k > n) {
            incomplete.push_back(k);
        }
    }
    auto graph = std::make_shared<Graph>(Graph::truncation(edges, incomplete));

    std::vector<Vertex> interior;
    interior.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 1; k <= n; ++k) {
        interior.push_back(k);
    }
    ScalarField f = ScalarField::constant(interior, 0.0);
    f.known_upper_bound = 0.0;
    f.known_lower_bound = 0.0;
    ScalarField g;
    g.set(0, 0.0);

    DoublingGraph out;
    // Every vertex of the full graph is adjacent to the hub, so the width is
    // exactly one even though the truncation cannot verify it.
    out.problem = make_problem(graph, std::move(interior), std::move(f), std::move(g), 1);
    for (std::int64_t k = 0; k <= n; ++k) {
        out.u.set(k, static_cast<double>(k));
        out.v.set(k, 0.0);
    }
    out.u.known_lower_bound = 0.0;  // u(k) = k on the full graph
    out.v.known_lower_bound = 0.0;
    out.v.known_upper_bound = 0.0;
    return out;
}

CombGraph comb_graph(int c, std::int64_t n_teeth, std::int64_t tooth_depth) {
    if (c < 2) {
        throw InputError("comb_graph: C must be >= 2 for the shaft inequality to hold");
    }
    if (n_teeth < 2) {
        throw InputError("comb_graph: need at least two teeth");
    }
    if (tooth_depth == 0 || tooth_depth < -1) {
        throw InputError("comb_graph: tooth_depth must be -1 (full) or >= 1");
    }

    CombGraph comb;
    comb.c = c;
    comb.n_teeth = n_teeth;
    comb.tooth_depth = tooth_depth;

    // Certified tail sums by backward recursion: seed the remainder past
    // m_last with the midpoint of its integral bracket, then add terms.
    const std::int64_t extra = 100000;
    const std::int64_t m_last = n_teeth + extra;
    auto len = [c](std::int64_t k) {
        double base = static_cast<double>(k + c);
        return base * base * base;
    };
    double lo = 1.0 / (2.0 * static_cast<double>(m_last + 1 + c) * (m_last + 1 + c));
    double hi = 1.0 / (2.0 * static_cast<double>(m_last + c) * (m_last + c));
    double running = 0.5 * (lo + hi);
    double comp = 0.0;  // Kahan compensation keeps the long sum near one ulp
    std::vector<double> all_tails(static_cast<std::size_t>(m_last + 1));
    for (std::int64_t k = m_last; k >= 0; --k) {
        double term = 1.0 / len(k) - comp;
        double next = running + term;
        comp = (next - running) - term;
        running = next;
        all_tails[static_cast<std::size_t>(k)] = running;
    }
    comb.tails.assign(all_tails.begin(),
                      all_tails.begin() + static_cast<std::ptrdiff_t>(n_teeth + 1));

    comb.shaft_values.resize(static_cast<std::size_t>(n_teeth));
    comb.shaft_values[0] = len(0) * comb.tails[0];
    for (std::int64_t n = 1; n < n_teeth; ++n) {
        comb.shaft_values[static_cast<std::size_t>(n)] =
            comb.shaft_values[static_cast<std::size_t>(n - 1)] +
            comb.tails[static_cast<std::size_t>(n)];
    }

    // Vertex layout: tooth n occupies ids offsets[n] .. offsets[n] + height_n,
    // level 0 being the shaft.
    comb.offsets.resize(static_cast<std::size_t>(n_teeth));
    std::int64_t next_id = 0;
    std::vector<std::int64_t> heights(static_cast<std::size_t>(n_teeth));
    for (std::int64_t n = 0; n < n_teeth; ++n) {
        auto l_n = static_cast<std::int64_t>(len(n));
        std::int64_t h = tooth_depth < 0 ? l_n : std::min(l_n, tooth_depth);
        heights[static_cast<std::size_t>(n)] = h;
        comb.offsets[static_cast<std::size_t>(n)] = next_id;
        next_id += h + 1;
        if (next_id > 64'000'000) {
            throw InputError("comb_graph: " + std::to_string(next_id) +
                             "+ vertices; materialize fewer teeth or pass a tooth_depth");
        }
    }

    std::vector<Edge> edges;
    std::vector<Vertex> incomplete;
    std::vector<Vertex> interior;
    ScalarField f;
    ScalarField g;
    for (std::int64_t n = 0; n < n_teeth; ++n) {
        std::int64_t base = comb.offsets[static_cast<std::size_t>(n)];
        std::int64_t h = heights[static_cast<std::size_t>(n)];
        auto l_n = static_cast<std::int64_t>(len(n));
        if (n + 1 < n_teeth) {
            edges.emplace_back(base, comb.offsets[static_cast<std::size_t>(n + 1)]);
        } else {
            incomplete.push_back(base);  // missing the next shaft vertex
        }
        for (std::int64_t l = 0; l < h; ++l) {
            edges.emplace_back(base + l, base + l + 1);
        }
        if (h < l_n) {
            incomplete.push_back(base + h);  // tooth truncated before its tip
        }
        for (std::int64_t l = 0; l <= h; ++l) {
            bool tip = l == l_n;
            if (tip) {
                g.set(base + l, 0.0);
            } else {
                interior.push_back(base + l);
                f.set(base + l, l == 0 ? -1.0 / len(n) : 0.0);
            }
        }
    }
    f.known_upper_bound = 0.0;   // -1/l_n increases toward 0 along the spine
    f.known_lower_bound = -1.0 / len(0);

    auto graph = std::make_shared<Graph>(Graph::truncation(edges, incomplete));
    comb.problem = make_problem(graph, std::move(interior), std::move(f), std::move(g));

    for (std::int64_t n = 0; n < n_teeth; ++n) {
        std::int64_t base = comb.offsets[static_cast<std::size_t>(n)];
        std::int64_t h = heights[static_cast<std::size_t>(n)];
        double l_n = len(n);
        double shaft = comb.shaft_values[static_cast<std::size_t>(n)];
        for (std::int64_t l = 0; l <= h; ++l) {
            double ratio = (l_n - static_cast<double>(l)) / l_n;
            comb.u.set(base + l, ratio);
            comb.v.set(base + l, ratio * shaft);
        }
    }
    comb.u.known_lower_bound = 0.0;
    comb.u.known_upper_bound = 1.0;
    comb.v.known_lower_bound = 0.0;
    // The shaft values increase toward a finite limit; one extra tail-of-tails
    // bound covers the unexposed part.
    comb.v.known_upper_bound =
        comb.shaft_values.back() + 1.0 / static_cast<double>(c + n_teeth - 1);
    return comb;
}

Vertex CombGraph::id(std::int64_t tooth, std::int64_t level) const {
    if (tooth < 0 || tooth >= n_teeth) {
        throw InputError("comb id: tooth out of range");
    }
    if (level < 0 || level > materialized_height(tooth)) {
        throw InputError("comb id: level not materialized");
    }
    return offsets[static_cast<std::size_t>(tooth)] + level;
}

std::int64_t CombGraph::materialized_height(std::int64_t tooth) const {
    auto l_n = static_cast<std::int64_t>(tooth_length(tooth));
    return tooth_depth < 0 ? l_n : std::min(l_n, tooth_depth);
}

double CombGraph::tooth_length(std::int64_t tooth) const {
    double base = static_cast<double>(tooth + c);
    return base * base * base;
}

double CombGraph::tail(std::int64_t tooth) const {
    return tails.at(static_cast<std::size_t>(tooth));
}

double CombGraph::shaft_margin(std::int64_t tooth) const {
    if (tooth < 1 || tooth >= n_teeth) {
        throw InputError("shaft_margin: tooth must be in [1, n_teeth)");
    }
    return tail(tooth) - shaft_values[static_cast<std::size_t>(tooth)] / tooth_length(tooth);
}

CcaCounterexample cca_counterexample(double a, std::int64_t half_width) {
    if (a < 0.0 || a > 1.0) {
        throw InputError("cca_counterexample: center value must lie in [0, 1]");
    }
    if (half_width < 3) {
        throw InputError("cca_counterexample: half_width must be >= 3");
    }
    CcaCounterexample ex;
    ex.center = 2 * half_width + 2;
    ex.center_value = a;

    std::vector<Edge> edges;
    for (std::int64_t k = -half_width; k < half_width; ++k) {
        edges.emplace_back(2 * k, 2 * (k + 1));          // top rail
        edges.emplace_back(2 * k + 1, 2 * (k + 1) + 1);  // bottom rail
    }
    edges.emplace_back(0, 1);           // rung top(0) ~ bottom(0)
    edges.emplace_back(0, ex.center);
    edges.emplace_back(1, ex.center);
    std::vector<Vertex> incomplete = {ex.top(-half_width), ex.top(half_width),
                                      ex.bottom(-half_width), ex.bottom(half_width)};
    ex.graph = std::make_shared<Graph>(Graph::truncation(edges, incomplete));

    for (std::int64_t k = -half_width; k <= half_width; ++k) {
        ex.u.set(ex.top(k), static_cast<double>(2 * k));
        ex.u.set(ex.bottom(k), static_cast<double>(2 * k + 1));
    }
    ex.u.set(ex.center, a);
    return ex;
}

NonexistenceWitness nonexistence_witness(int max_depth) {
    if (max_depth < 4) {
        throw InputError("nonexistence_witness: max_depth must be >= 4");
    }
    NonexistenceWitness report;
    for (int r = 4; r <= max_depth; r *= 2) {
        std::vector<Edge> edges;
        for (int k = 0; k < r; ++k) {
            edges.emplace_back(k, k + 1);
        }
        auto graph = std::make_shared<Graph>(Graph::materialized(edges));
        std::vector<Vertex> interior;
        for (int k = 1; k < r; ++k) {
            interior.push_back(k);
        }
        ScalarField f = ScalarField::constant(interior, -1.0);
        ScalarField g;
        g.set(0, 0.0);
        g.set(r, 0.0);
        DirichletProblem p = make_problem(graph, std::move(interior), std::move(f), std::move(g));

        SolveOptions opts;
        opts.scheme = Scheme::GaussSeidel;
        opts.tol = 1e-11;
        SolveOutcome outcome = solve(p, opts);
        double sup = 0.0;
        for (Vertex v : graph->vertices()) {
            sup = std::max(sup, std::abs(outcome.u.at(v)));
        }
        double mid = static_cast<double>(r / 2) * (r - r / 2) / 2.0;
        report.entries.push_back({r, sup, mid});
    }
    return report;
}

}  // namespace gallery
}  // namespace ilap
