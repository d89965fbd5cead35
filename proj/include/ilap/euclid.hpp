#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "ilap/solver.hpp"

namespace ilap {
namespace euclid {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Closed-form functions from a fixed catalog, usable as right-hand side,
// boundary data, or registered exact solution.
struct FnSpec {
    enum class Kind { Zero, Constant, Linear, Cone, Poly1d };
    Kind kind = Kind::Zero;
    double value = 0.0;                   // Constant
    double wx = 0.0, wy = 0.0, w0 = 0.0;  // Linear: wx x + wy y + w0
    Point center;                         // Cone: a + slope |p - center|
    double a = 0.0, slope = 0.0;
    std::vector<double> coeffs;           // Poly1d: sum_k coeffs[k] x^k

    double eval(const Point& p) const;

    static FnSpec zero() { return {}; }
    static FnSpec constant(double v);
    static FnSpec linear(double wx, double wy, double w0);
    static FnSpec cone(Point center, double a, double slope);
    static FnSpec poly1d(std::vector<double> coeffs);
};

// Finite-width Euclidean domains. Dimension is 1 or 2; the unbounded
// exemplars (slab between two graphs, the plane minus a lattice) are realized
// as periodic windows, which the sampler reports as an approximation.
struct DomainSpec {
    enum class Shape { Box, Annulus, LShape, Slab, PuncturedBox };
    Shape shape = Shape::Box;
    int dim = 2;

    Point lo, hi;                         // Box / LShape bounding box
    Point center;                         // Annulus
    double r_in = 0.0, r_out = 0.0;
    double cut_x = 0.0, cut_y = 0.0;      // LShape: box minus [cut_x,hi]x[cut_y,hi]
    std::vector<double> curve_lo, curve_hi;  // Slab: tabulated over one period in x
    double period = 0.0;                  // Slab / PuncturedBox window
    double spacing = 1.0;                 // PuncturedBox lattice spacing

    FnSpec f, g;
    std::optional<FnSpec> exact;

    static DomainSpec interval(double lo, double hi);
    static DomainSpec box2d(Point lo, Point hi);
    static DomainSpec annulus(Point center, double r_in, double r_out);
    static DomainSpec l_shape(Point lo, Point hi, double cut_x, double cut_y);
    static DomainSpec slab(std::vector<double> curve_lo, std::vector<double> curve_hi,
                           double period);
    static DomainSpec punctured_box(double period, double spacing);
};

// Interior grid points plus arc-sampled boundary points, with the weighted
// fine-grid adjacency used for intrinsic distances. Interior points are
// ordered by intrinsic distance to the boundary (ties by coordinates), then
// boundary points in construction order; the solver sweeps in that order.
struct DomainSample {
    int dim = 1;
    double h = 0.0;
    double rho = 0.0;  // fine-grid connection radius, 2.5 h
    std::vector<Point> points;
    std::size_t n_interior = 0;

    std::vector<std::size_t> adj_offsets;  // CSR over points
    std::vector<std::uint32_t> adj;
    std::vector<double> adj_weight;

    std::vector<double> boundary_dist;  // intrinsic distance to the boundary set
    double width = 0.0;
    bool convex = false;
    bool periodic_x = false, periodic_y = false;
    double period = 0.0;
    std::vector<std::string> warnings;

    bool is_interior(std::size_t i) const { return i < n_interior; }
    std::size_t size() const { return points.size(); }
    std::size_t nearest(const Point& p) const;
    double displacement(const Point& a, const Point& b) const;  // min-image Euclidean
};

DomainSample sample_domain(const DomainSpec& spec, double h);

// Shortest-path distance on the fine grid (Dijkstra with early exit). The
// documented metric distortion of the radius-2.5h template is below 4%.
double fine_grid_distance(const DomainSample& s, std::size_t i, std::size_t j);

// Intrinsic distance; convex non-periodic shapes take the straight-line
// shortcut, which must agree with the grid metric within the distortion bound.
double intrinsic_distance(const DomainSample& s, std::size_t i, std::size_t j);

// Distances from one source to every sample within `radius` (others = +inf).
std::vector<double> distances_within(const DomainSample& s, std::size_t source, double radius);

struct EpsGraphBundle {
    double eps = 0.0;
    int rhs_sign = 1;  // +1: rhs = eps^2 f; -1: the mirrored sign convention
    std::shared_ptr<const Graph> graph;  // vertex id = sample index
    DirichletProblem problem;
    int w_hops = 0;     // floor(width / eps) + 1
    int hop_width = 0;  // measured hop width of the graph itself
    double measured_width = 0.0;
};

// Adjacency: samples at fine-grid distance < eps. Every interior sample must
// acquire a neighbor, otherwise eps is too small for the sample geometry.
EpsGraphBundle build_eps_graph(const DomainSample& s, double eps, const FnSpec& f,
                               const FnSpec& g, int rhs_sign = 1);

struct BoundCheck {
    bool ok = false;
    double sup_u = 0.0;
    double bound = 0.0;  // max of the quadratic profile with the width constants
};

// ||u||_inf against the quadratic barrier bound with a = ||g||, b = W_i eps^2
// ||f||, c = eps^2 ||f||, maximized over hop radii 0..W_i.
BoundCheck uniform_bound_check(const EpsGraphBundle& bundle, const SolveOutcome& outcome);

struct ConvergenceLevel {
    double eps = 0.0;
    double h = 0.0;
    int w_hops = 0;
    std::size_t samples = 0;
    double residual = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double sup_u = 0.0;
    double bound = 0.0;
    bool bound_ok = false;
    // Per r: max over adjacent pairs inside Omega_r of |du| / eps.
    std::vector<std::pair<double, double>> lipschitz;
    // Per (r, delta): max over sampled pairs inside Omega_r within delta of |du| / delta.
    std::vector<std::tuple<double, double, double>> modulus;
    double boundary_delta = 0.0;
    double boundary_attainment = 0.0;  // max over boundary probes of sup |u - g(y0)| nearby
    std::optional<double> exact_error;
    std::optional<double> cauchy;  // sup probe difference against the previous level
    std::string failure;           // nonempty when this level could not be solved
};

struct ConvergenceReport {
    std::vector<double> schedule;
    std::vector<ConvergenceLevel> levels;
    std::vector<Point> probes;
    std::vector<Point> boundary_probes;
    std::vector<std::string> warnings;
};

struct ConvergenceOptions {
    double h_divisor = 20.0;  // h = eps / h_divisor; must keep h <= eps / 10
    Scheme scheme = Scheme::GaussSeidel;
    double tol = 1e-9;
    int rhs_sign = 1;
    std::size_t max_samples = 20000;
    std::size_t n_probes = 12;
    std::size_t n_boundary_probes = 6;
    // Re-use each level's solution as the next level's starting iterate.
    bool warm_start = true;
};

// Solves the discretized problem along a strictly decreasing eps schedule and
// fills the per-level tables. A failing level is recorded and the run
// continues with the remaining levels.
ConvergenceReport convergence_run(const DomainSpec& spec, std::span<const double> eps_schedule,
                                  const ConvergenceOptions& opts = {});

}  // namespace euclid
}  // namespace ilap
