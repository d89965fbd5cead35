#include "ilap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ilap/search.hpp"

namespace ilap {

namespace {

struct Workspace {
    std::vector<std::size_t> interior_idx;  // sorted by vertex id
    std::vector<double> f;                  // parallel to interior_idx
    std::vector<double> u;                  // per graph index
};

Workspace prepare(const DirichletProblem& p, const ScalarField& init) {
    const Graph& g = p.graph_ref();
    Workspace w;
    w.interior_idx.reserve(p.partition.interior.size());
    w.f.reserve(p.partition.interior.size());
    for (Vertex x : p.partition.interior) {
        std::size_t i = g.checked_index(x);
        if (!g.complete_at(i)) {
            throw TruncationError("solve: interior vertex " + std::to_string(x) +
                                  " has an incomplete neighborhood");
        }
        if (g.neighbors_at(i).empty()) {
            throw PreconditionError("solve: interior vertex " + std::to_string(x) +
                                    " is isolated");
        }
        w.interior_idx.push_back(i);
        w.f.push_back(p.f.at(x));
    }
    w.u.assign(g.vertex_count(), 0.0);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        w.u[i] = init.at(g.vertex_at(i));
    }
    for (Vertex y : p.partition.boundary) {
        w.u[g.checked_index(y)] = p.g.at(y);
    }
    return w;
}

double local_update(const Graph& g, const std::vector<double>& u, std::size_t i, double f) {
    auto nbrs = g.neighbor_indices_at(i);
    double lo = u[nbrs.front()];
    double hi = lo;
    for (std::size_t k = 1; k < nbrs.size(); ++k) {
        double val = u[nbrs[k]];
        lo = std::min(lo, val);
        hi = std::max(hi, val);
    }
    return 0.5 * (lo + hi - f);
}

double residual_sup_indexed(const Graph& g, const Workspace& w) {
    double sup = 0.0;
    for (std::size_t k = 0; k < w.interior_idx.size(); ++k) {
        double next = local_update(g, w.u, w.interior_idx[k], w.f[k]);
        sup = std::max(sup, 2.0 * std::abs(next - w.u[w.interior_idx[k]]));
    }
    return sup;
}

void record(std::vector<HistoryPoint>& history, std::size_t sweep_no, double change) {
    if (sweep_no <= 64 || (sweep_no & (sweep_no - 1)) == 0) {
        history.push_back({sweep_no, change});
    }
}

}  // namespace

ScalarField sweep(const DirichletProblem& p, const ScalarField& u) {
    const Graph& g = p.graph_ref();
    // The iteration pins the boundary to the data, so neighbor reads see g
    // there no matter what the supplied field carries.
    ScalarField eff = u;
    for (Vertex y : p.partition.boundary) {
        eff.set(y, p.g.at(y));
    }
    ScalarField out = eff;
    for (Vertex x : p.partition.interior) {
        LaplaceValue lv = inf_laplacian(eff, g, x);
        out.set(x, 0.5 * (lv.u_plus + lv.u_minus - p.f.at(x)));
    }
    return out;
}

SolveOutcome solve(const DirichletProblem& p, const SolveOptions& opts) {
    const Graph& g = p.graph_ref();
    if (p.partition.boundary.empty()) {
        throw PreconditionError("solve: empty boundary");
    }
    if (!p.partition.width_bound.has_value()) {
        throw PreconditionError(
            "solve: width is not finite (interior vertices cannot all reach the boundary); "
            "bounded solutions may fail to exist on such problems");
    }

    ScalarField init;
    switch (opts.init) {
        case InitKind::UpperBarrier:
            init = barrier_envelope(p, p.f_sup_norm(), Side::Upper);
            break;
        case InitKind::LowerBarrier:
            init = barrier_envelope(p, p.f_sup_norm(), Side::Lower);
            break;
        case InitKind::Custom:
            if (!opts.init_field) {
                throw InputError("solve: custom init requested without a field");
            }
            init = *opts.init_field;
            break;
    }

    Workspace w = prepare(p, init);
    SolveOutcome out;
    out.init_used = opts.init;

    const double tol = opts.tol;
    std::vector<double> next = w.u;
    double check_threshold = tol / 2.0;
    double last_change = std::numeric_limits<double>::infinity();

    std::size_t sweep_no = 0;
    while (sweep_no < opts.max_iters) {
        ++sweep_no;
        double change = 0.0;
        if (opts.scheme == Scheme::Jacobi) {
            for (std::size_t k = 0; k < w.interior_idx.size(); ++k) {
                std::size_t i = w.interior_idx[k];
                double val = local_update(g, w.u, i, w.f[k]);
                change = std::max(change, std::abs(val - w.u[i]));
                next[i] = val;
            }
            if (opts.verify_monotone && opts.init != InitKind::Custom) {
                for (std::size_t i : w.interior_idx) {
                    bool ok = opts.init == InitKind::UpperBarrier ? next[i] <= w.u[i] + 1e-12
                                                                  : next[i] >= w.u[i] - 1e-12;
                    if (!ok) {
                        throw PreconditionError("solve: monotone progression violated at sweep " +
                                                std::to_string(sweep_no));
                    }
                }
            }
            for (std::size_t i : w.interior_idx) {
                w.u[i] = next[i];
            }
        } else {
            for (std::size_t k = 0; k < w.interior_idx.size(); ++k) {
                std::size_t i = w.interior_idx[k];
                double val = local_update(g, w.u, i, w.f[k]);
                change = std::max(change, std::abs(val - w.u[i]));
                if (opts.verify_monotone && opts.init != InitKind::Custom) {
                    bool ok = opts.init == InitKind::UpperBarrier ? val <= w.u[i] + 1e-12
                                                                  : val >= w.u[i] - 1e-12;
                    if (!ok) {
                        throw PreconditionError("solve: monotone progression violated at sweep " +
                                                std::to_string(sweep_no));
                    }
                }
                w.u[i] = val;
            }
        }
        record(out.history, sweep_no, change);
        last_change = change;

        if (change <= check_threshold) {
            double res = residual_sup_indexed(g, w);
            if (res <= tol && change <= tol) {
                out.residual_sup = res;
                out.converged = true;
                break;
            }
            check_threshold /= 2.0;
        }
    }
    out.iterations = sweep_no;
    if (out.history.empty() || out.history.back().sweep != sweep_no) {
        out.history.push_back({sweep_no, last_change});
    }
    if (!out.converged) {
        out.residual_sup = residual_sup_indexed(g, w);
    }
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        out.u.set(g.vertex_at(i), w.u[i]);
    }
    return out;
}

UniquenessProbe uniqueness_probe(const DirichletProblem& p, double tol,
                                 const SolveOptions& base) {
    SolveOptions hi_opts;
    hi_opts.tol = base.tol;
    hi_opts.max_iters = base.max_iters;
    hi_opts.scheme = base.scheme;
    hi_opts.verify_monotone = base.verify_monotone;
    hi_opts.init = InitKind::UpperBarrier;
    SolveOptions lo_opts = hi_opts;
    lo_opts.init = InitKind::LowerBarrier;

    SolveOutcome hi = solve(p, hi_opts);
    SolveOutcome lo = solve(p, lo_opts);
    if (!hi.converged || !lo.converged) {
        throw PreconditionError("uniqueness_probe: solve did not converge within max_iters");
    }

    UniquenessProbe probe;
    probe.u_hi = std::move(hi.u);
    probe.u_lo = std::move(lo.u);
    for (Vertex v : p.graph_ref().vertices()) {
        probe.gap = std::max(probe.gap, std::abs(probe.u_hi.at(v) - probe.u_lo.at(v)));
    }
    bool nonneg = true;
    bool nonpos = true;
    for (Vertex x : p.partition.interior) {
        double fx = p.f.at(x);
        nonneg = nonneg && fx >= 0.0;
        nonpos = nonpos && fx <= 0.0;
    }
    probe.f_one_signed = nonneg || nonpos;
    probe.unique_evidence = probe.gap <= tol && probe.f_one_signed;
    return probe;
}

}  // namespace ilap
