#include "ilap/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "ilap/search.hpp"

namespace ilap {

LaplaceValue inf_laplacian(const ScalarField& u, const Graph& g, Vertex x) {
    std::size_t idx = g.checked_index(x);
    if (!g.complete_at(idx)) {
        throw TruncationError("vertex " + std::to_string(x) +
                              " has an incompletely enumerated neighborhood");
    }
    auto nbrs = g.neighbors_at(idx);
    if (nbrs.empty()) {
        throw PreconditionError("vertex " + std::to_string(x) + " is isolated");
    }
    double lo = u.at(nbrs.front());
    double hi = lo;
    for (std::size_t k = 1; k < nbrs.size(); ++k) {
        double val = u.at(nbrs[k]);
        lo = std::min(lo, val);
        hi = std::max(hi, val);
    }
    double center = u.at(x);
    return {lo + hi - 2.0 * center, hi, lo};
}

ResidualReport residual(const DirichletProblem& p, const ScalarField& u) {
    const Graph& g = p.graph_ref();
    ResidualReport r;
    for (Vertex x : p.partition.interior) {
        if (!g.complete(x)) {
            r.skipped_incomplete++;
            continue;
        }
        double defect = inf_laplacian(u, g, x).value - p.f.at(x);
        r.interior_defect.set(x, defect);
        r.interior_sup = std::max(r.interior_sup, std::abs(defect));
    }
    for (Vertex y : p.partition.boundary) {
        r.boundary_sup = std::max(r.boundary_sup, std::abs(u.at(y) - p.g.at(y)));
    }
    r.sup_norm = std::max(r.interior_sup, r.boundary_sup);
    return r;
}

bool is_supersolution(const DirichletProblem& p, const ScalarField& v, double tau) {
    const Graph& g = p.graph_ref();
    for (Vertex x : p.partition.interior) {
        if (!g.complete(x)) {
            continue;
        }
        if (-inf_laplacian(v, g, x).value < p.f.at(x) - tau) {
            return false;
        }
    }
    return true;
}

bool is_subsolution(const DirichletProblem& p, const ScalarField& u, double tau) {
    const Graph& g = p.graph_ref();
    for (Vertex x : p.partition.interior) {
        if (!g.complete(x)) {
            continue;
        }
        if (-inf_laplacian(u, g, x).value > p.f.at(x) + tau) {
            return false;
        }
    }
    return true;
}

ComparisonReport comparison_check(const DirichletProblem& p, const ScalarField& u,
                                  const ScalarField& v, double tau) {
    ComparisonReport r;
    bool first = true;
    for (Vertex x : p.partition.interior) {
        double d = u.at(x) - v.at(x);
        if (first || d > r.sup_diff_interior) {
            r.sup_diff_interior = d;
            r.interior_witness = x;
            first = false;
        }
    }
    first = true;
    for (Vertex y : p.partition.boundary) {
        double d = u.at(y) - v.at(y);
        if (first || d > r.sup_diff_boundary) {
            r.sup_diff_boundary = d;
            r.boundary_witness = y;
            first = false;
        }
    }
    if (p.partition.boundary.empty()) {
        r.verdict = false;
        r.hypotheses_met = false;
        r.hypothesis_note = "empty boundary";
        return r;
    }
    r.verdict = p.partition.interior.empty() ||
                r.sup_diff_interior <= r.sup_diff_boundary + tau;

    bool nonneg = true;
    bool nonpos = true;
    for (Vertex x : p.partition.interior) {
        double fx = p.f.at(x);
        nonneg = nonneg && fx >= -tau;
        nonpos = nonpos && fx <= tau;
    }
    if (!nonneg && !nonpos) {
        r.hypothesis_note = "sign-changing right-hand side: comparison hypotheses not met";
    } else if (!is_subsolution(p, u, tau)) {
        r.hypothesis_note = "u is not a subsolution";
    } else if (!is_supersolution(p, v, tau)) {
        r.hypothesis_note = "v is not a supersolution";
    } else {
        r.hypotheses_met = true;
    }
    return r;
}

MarchingReport marching_check(const DirichletProblem& p, const ScalarField& u, Vertex x, Vertex y,
                              double tau) {
    if (!p.partition.is_interior(x)) {
        throw PreconditionError("marching_check: vertex " + std::to_string(x) +
                                " is not interior");
    }
    const Graph& g = p.graph_ref();
    if (!g.adjacent(x, y)) {
        throw InputError("marching_check: " + std::to_string(y) + " is not adjacent to " +
                         std::to_string(x));
    }
    LaplaceValue lv = inf_laplacian(u, g, x);
    double fx = p.f.at(x);
    MarchingReport r;
    r.down_gap = u.at(x) - lv.u_minus;
    r.up_gap = lv.u_plus - u.at(x) - fx;
    r.neighbor_gap = u.at(y) - u.at(x) - fx;
    bool equation_holds = std::abs(lv.value - fx) <= tau;  // down_gap == up_gap
    r.ok = equation_holds && r.down_gap >= r.neighbor_gap - tau;
    return r;
}

GradientEstimateReport gradient_estimate_check(const DirichletProblem& p, const ScalarField& u,
                                               Vertex x, Vertex y, int n, double tau,
                                               const GradientEstimateOptions& opts) {
    if (n < 1) {
        throw PreconditionError("gradient_estimate_check: N must be >= 1");
    }
    if (!p.partition.is_interior(x)) {
        throw PreconditionError("gradient_estimate_check: vertex " + std::to_string(x) +
                                " is not interior");
    }
    const Graph& g = p.graph_ref();
    if (!g.adjacent(x, y)) {
        throw InputError("gradient_estimate_check: " + std::to_string(y) +
                         " is not adjacent to " + std::to_string(x));
    }
    DistanceResult to_x = distance(g, p.partition.boundary, x);
    if (!to_x.hops.has_value() && !to_x.truncation_limited) {
        throw PreconditionError("gradient_estimate_check: x does not reach the boundary");
    }
    // The admissible depth is d(Y, x); with truncation only the sound lower
    // bound is usable.
    int admissible = to_x.exact() ? *to_x.hops : to_x.lower_bound;
    if (n > admissible) {
        throw PreconditionError("gradient_estimate_check: N exceeds the distance to the boundary");
    }

    double inf_u;
    if (opts.inf_u_override) {
        inf_u = *opts.inf_u_override;
    } else if (!g.has_incomplete()) {
        inf_u = u.min_value();
    } else if (u.known_lower_bound) {
        inf_u = *u.known_lower_bound;
    } else {
        throw TruncationError(
            "gradient_estimate_check: inf u is not determined on a truncated graph "
            "(no certified lower bound)");
    }

    double sup_f;
    if (opts.sup_f_override) {
        sup_f = *opts.sup_f_override;
    } else if (!g.has_incomplete()) {
        sup_f = p.f.empty() ? 0.0 : p.f.max_value();
    } else if (p.f.known_upper_bound) {
        sup_f = *p.f.known_upper_bound;
    } else {
        throw TruncationError(
            "gradient_estimate_check: sup f is not determined on a truncated graph "
            "(no certified upper bound)");
    }

    GradientEstimateReport r;
    r.inf_u = inf_u;
    r.sup_f = sup_f;
    r.steps = n;
    r.lhs = u.at(y) - u.at(x);
    r.rhs = (u.at(x) - inf_u) / n + (n + 1) * sup_f / 2.0;
    r.ok = r.lhs <= r.rhs + tau;
    return r;
}

}  // namespace ilap
