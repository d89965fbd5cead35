#pragma once

#include <vector>

#include "ilap/field.hpp"

namespace ilap {
namespace gallery {

// Two 4-vertex rails joined by two rungs; the four outer vertices are
// boundary with value 0. Vertex ids: bottom rail 0,1,2,3 left to right, top
// rail 4,5,6,7; rungs 1~5 and 2~6; interior {1,2,5,6}. The bundled field u is
// -1 on the bottom interior and +1 on the top interior, and the right-hand
// side is generated from it, so u + a * indicator(X) solves the same problem
// for every a in [-1, 1].
struct SignChangeExample {
    DirichletProblem problem;
    ScalarField u;
    double a_min = -1.0;
    double a_max = 1.0;

    ScalarField shifted(double a) const;  // u + a on the interior
};

SignChangeExample sign_change_example();

// Truncation of the infinite hub graph with edges 0~k and k~2k: vertices
// 0..n, interior {1..n}, boundary {0} with value 0, f == 0. Vertex 0 and
// every k with 2k > n are incomplete. u(k) = k and v == 0 both solve on the
// complete vertices, one unbounded and one bounded.
struct DoublingGraph {
    DirichletProblem problem;
    ScalarField u;
    ScalarField v;
};

DoublingGraph doubling_graph(std::int64_t n);

// Comb graph with tooth lengths (n + C)^3: a spine (n,0) ~ (n+1,0) carrying a
// tooth (n,0) ~ (n,1) ~ ... ~ (n, l_n) per shaft. Boundary: materialized
// tips, value 0; right-hand side -1/l_n on the shaft, 0 elsewhere. Teeth are
// materialized to tooth_depth levels (-1 = fully); vertices whose next tooth
// level or next shaft vertex is missing are incomplete.
//
// The bundled u is the per-tooth linear solution; v is the second bounded
// solution built from the tail sums of 1/l_k, evaluated by backward recursion
// from a bracketed integral remainder so that stated digits are certified.
struct CombGraph {
    DirichletProblem problem;
    ScalarField u;
    ScalarField v;
    int c = 2;
    std::int64_t n_teeth = 0;
    std::int64_t tooth_depth = -1;

    Vertex id(std::int64_t tooth, std::int64_t level) const;
    std::int64_t materialized_height(std::int64_t tooth) const;
    double tooth_length(std::int64_t tooth) const;  // l_n
    double tail(std::int64_t tooth) const;          // sum over k >= tooth of 1/l_k
    // Slack of the shaft inequality v(n,0) - v(n-1,0) >= v(n,0)/l_n, n >= 1.
    double shaft_margin(std::int64_t tooth) const;

    std::vector<std::int64_t> offsets;  // id of (n, 0) per tooth
    std::vector<double> tails;          // tail(n), n = 0..n_teeth
    std::vector<double> shaft_values;   // v(n, 0)
};

CombGraph comb_graph(int c, std::int64_t n_teeth, std::int64_t tooth_depth = -1);

// Window of the two-rail graph whose field satisfies both cone comparisons
// for every center value in [0, 1] yet is harmonic at the center only for
// 0.5. Vertex ids: top rail position k has id 2k and value 2k, bottom rail
// position k has id 2k+1 and value 2k+1, k in [-half_width, half_width];
// the center vertex is adjacent to top(0) and bottom(0). Rail ends are
// incomplete.
struct CcaCounterexample {
    std::shared_ptr<const Graph> graph;
    ScalarField u;
    Vertex center;
    double center_value;

    Vertex top(std::int64_t k) const { return 2 * k; }
    Vertex bottom(std::int64_t k) const { return 2 * k + 1; }
};

CcaCounterexample cca_counterexample(double a, std::int64_t half_width = 4);

// Closed truncations of the half-line problem with f == -1 and zero boundary
// data: the solution norm grows quadratically with the truncation width,
// demonstrating why no bounded solution survives the infinite-width limit.
struct NonexistenceWitness {
    struct Entry {
        int truncation;       // path 0..truncation
        double sup_norm;      // of the solved field
        double closed_form;   // k (r - k) / 2 at the midpoint
    };
    std::vector<Entry> entries;
};

NonexistenceWitness nonexistence_witness(int max_depth);

}  // namespace gallery
}  // namespace ilap
