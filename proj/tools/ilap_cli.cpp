// Command-line front end: solve problem files, estimate game values by Monte
// Carlo, run eps-convergence studies, and emit the example-graph gallery.
//
// Exit codes: 0 success, 2 invalid input, 3 not converged, 4 truncation-limited.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ilap/amle.hpp"
#include "ilap/calculus.hpp"
#include "ilap/euclid.hpp"
#include "ilap/gallery.hpp"
#include "ilap/game.hpp"
#include "ilap/io.hpp"
#include "ilap/search.hpp"
#include "ilap/solver.hpp"

using namespace ilap;
using io::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitTruncation = 4;

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw InputError("cannot create output directory '" + dir + "'");
    }
}

void write_manifest(const std::string& dir, const std::string& command,
                    const std::vector<std::string>& args, const std::string& input_bytes,
                    std::uint64_t seed, bool has_seed) {
    json m = io::make_manifest(command, args, input_bytes, seed, has_seed);
    io::write_file(dir + "/manifest.json", m.dump(2) + "\n");
}

json verification_block(const DirichletProblem& p, const ScalarField& u) {
    json v;
    auto res = residual(p, u);
    v["residual"] = res.sup_norm;
    v["residual_boundary"] = res.boundary_sup;
    v["skipped_incomplete"] = res.skipped_incomplete;

    std::size_t march_checked = 0, march_passed = 0;
    std::size_t grad_checked = 0, grad_passed = 0;
    const Graph& g = p.graph_ref();
    for (Vertex x : p.partition.interior) {
        if (!g.complete(x)) {
            continue;
        }
        auto d = distance(g, p.partition.boundary, x);
        int depth = 0;
        if (d.hops.has_value()) {
            depth = d.exact() ? *d.hops : d.lower_bound;
        }
        for (Vertex y : g.neighbors(x)) {
            ++march_checked;

            if (marching_check(p, u, x, y, 1e-7).ok) {
                ++march_passed;
            }
            for (int n = 1; n <= depth; ++n) {
                ++grad_checked;
                if (gradient_estimate_check(p, u, x, y, n, 1e-7).ok) {
                    ++grad_passed;
                }
            }
        }
    }
    v["marching"] = {{"checked", march_checked}, {"passed", march_passed}};
    v["gradient_estimate"] = {{"checked", grad_checked}, {"passed", grad_passed}};
    return v;
}

int cmd_solve(const std::string& input, const std::string& out_dir, double tol,
              const std::string& init, const std::string& scheme, std::size_t max_iters,
              bool probe_uniqueness) {
    std::string bytes = io::read_file(input);
    DirichletProblem p = io::problem_from_json(json::parse(bytes));

    SolveOptions opts;
    opts.tol = tol;
    opts.max_iters = max_iters;
    if (init == "upper") {
        opts.init = InitKind::UpperBarrier;
    } else if (init == "lower") {
        opts.init = InitKind::LowerBarrier;
    } else {
        throw InputError("unknown init '" + init + "'");
    }
    if (scheme == "jacobi") {
        opts.scheme = Scheme::Jacobi;
    } else if (scheme == "gauss-seidel" || scheme == "gs") {
        opts.scheme = Scheme::GaussSeidel;
    } else {
        throw InputError("unknown scheme '" + scheme + "'");
    }

    SolveOutcome outcome = solve(p, opts);
    json out = io::outcome_to_json(outcome);
    out["verification"] = verification_block(p, outcome.u);
    if (probe_uniqueness) {
        SolveOptions base = opts;
        auto probe = uniqueness_probe(p, 1e-8, base);
        out["uniqueness"] = {{"gap", probe.gap},
                             {"unique_evidence", probe.unique_evidence},
                             {"f_one_signed", probe.f_one_signed}};
    }
    ensure_dir(out_dir);
    io::write_file(out_dir + "/outcome.json", out.dump(2) + "\n");
    io::write_file(out_dir + "/field.csv", io::field_to_csv(outcome.u));
    write_manifest(out_dir, "solve",
                   {input, "--tol", io::format_double(tol), "--init", init, "--scheme", scheme},
                   bytes, 0, false);
    if (!outcome.converged) {
        std::fprintf(stderr, "solve: not converged after %zu sweeps (residual %.3g)\n",
                     outcome.iterations, outcome.residual_sup);
        return kExitNotConverged;
    }
    std::printf("solved: residual %.3g in %zu sweeps\n", outcome.residual_sup,
                outcome.iterations);
    return 0;
}

int cmd_simulate(const std::string& input, const std::string& out_dir, std::int64_t n_games,
                 std::uint64_t seed, const std::string& strategy) {
    std::string bytes = io::read_file(input);
    GameConfig cfg = io::game_from_json(json::parse(bytes));

    Strategy maxer = Strategy::toward_boundary(cfg);
    Strategy minner = maxer;
    if (strategy == "greedy") {
        SolveOptions opts;
        opts.tol = 1e-11;
        opts.scheme = Scheme::GaussSeidel;
        SolveOutcome value = solve(game_to_problem(cfg), opts);
        if (!value.converged) {
            throw PreconditionError("value solve did not converge; cannot build greedy play");
        }
        maxer = Strategy::greedy_max(value.u);
        minner = Strategy::greedy_min(value.u);
    } else if (strategy != "toward-boundary") {
        throw InputError("unknown strategy '" + strategy + "'");
    }

    ValueEstimate est = estimate_value(cfg, maxer, minner, n_games, seed);
    ensure_dir(out_dir);
    io::write_file(out_dir + "/estimate.json", io::estimate_to_json(est).dump(2) + "\n");
    write_manifest(out_dir, "simulate",
                   {input, "--n", std::to_string(n_games), "--strategy", strategy}, bytes, seed,
                   true);
    if (est.capped > 0) {
        std::fprintf(stderr, "warning: %lld games hit the round cap and were excluded\n",
                     static_cast<long long>(est.capped));
    }
    std::printf("mean %.6g stderr %.3g over %lld games\n", est.mean, est.stderr_,
                static_cast<long long>(est.completed));
    return 0;
}

int cmd_converge(const std::string& input, const std::string& out_dir,
                 const std::string& eps_list, double h_div, const std::string& scheme,
                 double tol, int rhs_sign) {
    std::string bytes = io::read_file(input);
    euclid::DomainSpec spec = io::domain_from_json(json::parse(bytes));

    std::vector<double> schedule;
    std::stringstream ss(eps_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        schedule.push_back(std::stod(tok));
    }
    euclid::ConvergenceOptions opts;
    opts.h_divisor = h_div;
    opts.tol = tol;
    opts.rhs_sign = rhs_sign;
    opts.scheme = scheme == "jacobi" ? Scheme::Jacobi : Scheme::GaussSeidel;

    euclid::ConvergenceReport rep = euclid::convergence_run(spec, schedule, opts);
    ensure_dir(out_dir);
    io::write_file(out_dir + "/report.json", io::convergence_to_json(rep).dump(2) + "\n");
    io::write_file(out_dir + "/report.csv", io::convergence_to_csv(rep));
    write_manifest(out_dir, "converge", {input, "--eps", eps_list}, bytes, 0, false);

    bool any_failure = false;
    for (const auto& lv : rep.levels) {
        std::printf("eps %-8g samples %-6zu residual %-10.3g", lv.eps, lv.samples, lv.residual);
        if (lv.exact_error) {
            std::printf(" error %-10.3g", *lv.exact_error);
        }
        if (lv.cauchy) {
            std::printf(" cauchy %-10.3g", *lv.cauchy);
        }
        if (!lv.failure.empty()) {
            std::printf(" FAILED: %s", lv.failure.c_str());
            any_failure = true;
        }
        std::printf("\n");
    }
    return any_failure ? kExitNotConverged : 0;
}

int cmd_gallery(const std::string& name, const std::string& out_dir, std::int64_t n,
                int c_param, std::int64_t teeth, std::int64_t depth, double a,
                std::int64_t half_width, int witness_depth) {
    ensure_dir(out_dir);
    json meta;
    if (name == "sign-change") {
        auto ex = gallery::sign_change_example();
        io::write_file(out_dir + "/problem.json", io::problem_to_json(ex.problem).dump(2) + "\n");
        io::write_file(out_dir + "/u.json", io::field_to_json(ex.u).dump(2) + "\n");
        meta["family"] = {{"a_min", ex.a_min}, {"a_max", ex.a_max}};
    } else if (name == "doubling") {
        auto dg = gallery::doubling_graph(n);
        io::write_file(out_dir + "/problem.json", io::problem_to_json(dg.problem).dump(2) + "\n");
        io::write_file(out_dir + "/u.json", io::field_to_json(dg.u).dump(2) + "\n");
        io::write_file(out_dir + "/v.json", io::field_to_json(dg.v).dump(2) + "\n");
    } else if (name == "comb") {
        auto comb = gallery::comb_graph(c_param, teeth, depth);
        io::write_file(out_dir + "/problem.json",
                       io::problem_to_json(comb.problem).dump(2) + "\n");
        io::write_file(out_dir + "/u.json", io::field_to_json(comb.u).dump(2) + "\n");
        io::write_file(out_dir + "/v.json", io::field_to_json(comb.v).dump(2) + "\n");
        std::string margins = "tooth,margin\n";
        for (std::int64_t k = 1; k < comb.n_teeth; ++k) {
            margins += std::to_string(k) + "," + io::format_double(comb.shaft_margin(k)) + "\n";
        }
        io::write_file(out_dir + "/margins.csv", margins);
    } else if (name == "cca-counterexample") {
        auto ex = gallery::cca_counterexample(a, half_width);
        io::write_file(out_dir + "/graph.json", io::graph_to_json(*ex.graph).dump(2) + "\n");
        io::write_file(out_dir + "/u.json", io::field_to_json(ex.u).dump(2) + "\n");
        meta["center"] = ex.center;
        meta["center_value"] = ex.center_value;
        meta["center_defect"] = inf_laplacian(ex.u, *ex.graph, ex.center).value;
    } else if (name == "nonexistence") {
        auto report = gallery::nonexistence_witness(witness_depth);
        std::string csv = "truncation,sup_norm,closed_form\n";
        json entries = json::array();
        for (const auto& e : report.entries) {
            csv += std::to_string(e.truncation) + "," + io::format_double(e.sup_norm) + "," +
                   io::format_double(e.closed_form) + "\n";
            entries.push_back({{"truncation", e.truncation},
                               {"sup_norm", e.sup_norm},
                               {"closed_form", e.closed_form}});
        }
        io::write_file(out_dir + "/report.csv", csv);
        meta["entries"] = std::move(entries);
    } else {
        throw InputError("unknown gallery entry '" + name + "'");
    }
    if (!meta.empty()) {
        io::write_file(out_dir + "/meta.json", meta.dump(2) + "\n");
    }
    write_manifest(out_dir, "gallery " + name, {}, name, 0, false);
    std::printf("gallery '%s' written to %s\n", name.c_str(), out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete infinity-Laplace problems on graphs: solver, games, convergence"};
    app.require_subcommand(1);

    std::string input, out_dir = ".";
    double tol = 1e-9;
    std::string init = "upper";
    std::string scheme = "jacobi";
    std::size_t max_iters = 1'000'000;
    bool probe_uniqueness = false;

    auto* solve_cmd = app.add_subcommand("solve", "solve a problem file");
    solve_cmd->add_option("problem", input, "problem JSON")->required();
    solve_cmd->add_option("--tol", tol, "residual tolerance");
    solve_cmd->add_option("--init", init, "upper|lower");
    solve_cmd->add_option("--scheme", scheme, "jacobi|gauss-seidel");
    solve_cmd->add_option("--max-iters", max_iters, "sweep cap");
    solve_cmd->add_flag("--probe-uniqueness", probe_uniqueness,
                        "also solve from both envelopes and report the gap");
    solve_cmd->add_option("--out", out_dir, "output directory");

    std::int64_t n_games = 100000;
    std::uint64_t seed = 1;
    std::string strategy = "greedy";
    auto* sim_cmd = app.add_subcommand("simulate", "estimate a game value by Monte Carlo");
    sim_cmd->add_option("game", input, "game JSON")->required();
    sim_cmd->add_option("--n", n_games, "number of games");
    sim_cmd->add_option("--seed", seed, "coin-stream seed");
    sim_cmd->add_option("--strategy", strategy, "greedy|toward-boundary");
    sim_cmd->add_option("--out", out_dir, "output directory");

    std::string eps_list = "0.2,0.1,0.05";
    double h_div = 20.0;
    double ctol = 1e-9;
    int rhs_sign = 1;
    std::string cscheme = "gauss-seidel";
    auto* conv_cmd = app.add_subcommand("converge", "eps-graph convergence study");
    conv_cmd->add_option("domain", input, "domain JSON")->required();
    conv_cmd->add_option("--eps", eps_list, "comma-separated decreasing schedule");
    conv_cmd->add_option("--h-div", h_div, "h = eps / h_div (>= 10)");
    conv_cmd->add_option("--tol", ctol, "solver tolerance");
    conv_cmd->add_option("--rhs-sign", rhs_sign, "+1 or -1 discretization sign");
    conv_cmd->add_option("--scheme", cscheme, "jacobi|gauss-seidel");
    conv_cmd->add_option("--out", out_dir, "output directory");

    std::string entry;
    std::int64_t gal_n = 1024;
    int gal_c = 2;
    std::int64_t gal_teeth = 16;
    std::int64_t gal_depth = -1;
    double gal_a = 0.3;
    std::int64_t gal_half_width = 5;
    int gal_witness = 64;
    auto* gal_cmd = app.add_subcommand("gallery", "emit a named example graph");
    gal_cmd
        ->add_option("name", entry,
                     "sign-change|doubling|comb|cca-counterexample|nonexistence")
        ->required();
    gal_cmd->add_option("--n", gal_n, "doubling truncation size");
    gal_cmd->add_option("--c", gal_c, "comb offset constant");
    gal_cmd->add_option("--teeth", gal_teeth, "comb teeth");
    gal_cmd->add_option("--depth", gal_depth, "comb tooth materialization depth (-1 = full)");
    gal_cmd->add_option("--a", gal_a, "center value of the two-rail window");
    gal_cmd->add_option("--half-width", gal_half_width, "rail half width");
    gal_cmd->add_option("--max-depth", gal_witness, "largest truncation of the half-line");
    gal_cmd->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) {
            return cmd_solve(input, out_dir, tol, init, scheme, max_iters, probe_uniqueness);
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(input, out_dir, n_games, seed, strategy);
        }
        if (conv_cmd->parsed()) {
            return cmd_converge(input, out_dir, eps_list, h_div, cscheme, ctol, rhs_sign);
        }
        if (gal_cmd->parsed()) {
            return cmd_gallery(entry, out_dir, gal_n, gal_c, gal_teeth, gal_depth, gal_a,
                               gal_half_width, gal_witness);
        }
    } catch (const TruncationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitTruncation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    }
    return kExitBadInput;
}
