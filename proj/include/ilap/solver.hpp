#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ilap/barrier.hpp"

namespace ilap {

enum class Scheme { Jacobi, GaussSeidel };
enum class InitKind { UpperBarrier, LowerBarrier, Custom };

struct SolveOptions {
    InitKind init = InitKind::UpperBarrier;
    std::optional<ScalarField> init_field;  // Custom init; boundary values are overwritten by g
    double tol = kDefaultTolerance;
    std::size_t max_iters = 1'000'000;
    Scheme scheme = Scheme::Jacobi;
    // Assert one-sided progression of the iterates from barrier inits.
    bool verify_monotone = false;
};

struct HistoryPoint {
    std::size_t sweep;
    double sup_change;
};

struct SolveOutcome {
    ScalarField u;
    double residual_sup = 0.0;
    std::size_t iterations = 0;
    // Geometrically thinned sup-change trace: every sweep up to 64, then
    // powers of two, plus the final sweep.
    std::vector<HistoryPoint> history;
    InitKind init_used = InitKind::UpperBarrier;
    bool converged = false;
};

// One fixed-point application u'(x) = (sup_N u + inf_N u - f(x)) / 2 on the
// interior, u' = g on the boundary. Monotone in u and sup-norm nonexpansive;
// its fixed points are exactly the solutions.
ScalarField sweep(const DirichletProblem& p, const ScalarField& u);

// Iterates sweep from a quadratic barrier envelope (or a custom field) until
// the residual and the per-sweep change both drop below tol. From the upper
// envelope the iterates decrease pointwise toward a solution; mirrored from
// the lower one. Exhausting max_iters reports converged = false rather than
// throwing.
SolveOutcome solve(const DirichletProblem& p, const SolveOptions& opts = {});

struct UniquenessProbe {
    double gap = 0.0;  // sup |u_hi - u_lo|
    bool unique_evidence = false;
    bool f_one_signed = false;
    ScalarField u_hi;
    ScalarField u_lo;
};

// Solves from both barrier envelopes and compares the limits. A gap above tol
// exhibits two distinct solutions of the same problem.
UniquenessProbe uniqueness_probe(const DirichletProblem& p, double tol = 1e-8,
                                 const SolveOptions& base = {});

}  // namespace ilap
