#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ilap/field.hpp"

namespace ilap {

// Equality-type assertions compare at this tolerance; one-sided checks allow
// the same slack. Few-term sums at desk scale stay far below it.
inline constexpr double kDefaultTolerance = 1e-9;

struct LaplaceValue {
    double value;  // inf + sup - 2 u(x) over the neighbors of x
    double u_plus;
    double u_minus;
};

// Requires a complete, nonempty neighborhood and u defined on {x} and N(x).
LaplaceValue inf_laplacian(const ScalarField& u, const Graph& g, Vertex x);

struct ResidualReport {
    ScalarField interior_defect;       // (inf_laplacian - f) per complete interior vertex
    double interior_sup = 0.0;
    double boundary_sup = 0.0;         // sup |u - g| over the boundary
    double sup_norm = 0.0;             // max of the two
    std::size_t skipped_incomplete = 0;  // interior vertices not evaluated
};

// u must be total on the exposed graph. Incomplete interior vertices are
// skipped and counted; everything else contributes a defect value.
ResidualReport residual(const DirichletProblem& p, const ScalarField& u);

// One-sided operator comparisons, with f on the -laplacian side:
//   supersolution:  -inf_laplacian(v) >= f   on the (complete) interior,
//   subsolution:    -inf_laplacian(u) <= f.
bool is_supersolution(const DirichletProblem& p, const ScalarField& v,
                      double tau = kDefaultTolerance);
bool is_subsolution(const DirichletProblem& p, const ScalarField& u,
                    double tau = kDefaultTolerance);

struct ComparisonReport {
    double sup_diff_interior = 0.0;
    double sup_diff_boundary = 0.0;
    std::optional<Vertex> interior_witness;
    std::optional<Vertex> boundary_witness;
    // sup over all vertices of u - v is attained on the boundary (within tau).
    bool verdict = false;
    // Hypotheses of the comparison statement: u sub, v super, f of one sign.
    bool hypotheses_met = false;
    std::string hypothesis_note;
};

// Checks sup_V(u - v) = sup_{V \ X}(u - v). The verdict is reported for any
// input; hypotheses_met records whether the statement ought to apply.
ComparisonReport comparison_check(const DirichletProblem& p, const ScalarField& u,
                                  const ScalarField& v, double tau = kDefaultTolerance);

struct MarchingReport {
    bool ok = false;
    double down_gap;        // u(x) - u_minus(x)
    double up_gap;          // u_plus(x) - u(x) - f(x)
    double neighbor_gap;    // u(y) - u(x) - f(x)
};

// At a vertex where u solves the equation, the drop to the steepest-descent
// neighbor equals the rise to the steepest-ascent neighbor minus f, and that
// dominates the rise toward any particular neighbor y.
MarchingReport marching_check(const DirichletProblem& p, const ScalarField& u, Vertex x, Vertex y,
                              double tau = kDefaultTolerance);

struct GradientEstimateOptions {
    // Sound relaxations for truncated instances: a lower bound on the full
    // field's inf, an upper bound on the full right-hand side's sup.
    std::optional<double> inf_u_override;
    std::optional<double> sup_f_override;
};

struct GradientEstimateReport {
    bool ok = false;
    double lhs;    // u(y) - u(x)
    double rhs;    // (u(x) - inf u)/N + (N+1) sup f / 2
    double inf_u;
    double sup_f;
    int steps;
};

// Slope bound at x toward a neighbor y, with lookback depth N <= d(Y, x).
GradientEstimateReport gradient_estimate_check(const DirichletProblem& p, const ScalarField& u,
                                               Vertex x, Vertex y, int n,
                                               double tau = kDefaultTolerance,
                                               const GradientEstimateOptions& opts = {});

}  // namespace ilap
