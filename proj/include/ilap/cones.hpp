#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ilap/barrier.hpp"

namespace ilap {

// Cone a - b d(x0, .) (lower) or a + b d(x0, .) (upper) over the exposed
// graph. Throws TruncationError when any exposed distance is inexact.
ScalarField cone_field(const Graph& g, Vertex apex, double a, double b, Side side);

// One cone of the comparison family; applied to every probed subset. The
// intercept is tightened per subset so the boundary inequality just holds,
// which covers every weaker intercept at once.
struct ConeComparisonSample {
    Vertex apex = 0;  // must lie outside the subset
    double b = 0.0;
};

struct ConeComparisonViolation {
    Side side;         // Upper cone = CCB side, Lower = CCA side
    Vertex apex;
    double a;
    double b;
    Vertex vertex;     // where the comparison fails
    double gap;        // by how much
    std::size_t subset_index;
};

struct ConeComparisonReport {
    std::size_t samples_checked = 0;
    std::size_t samples_skipped = 0;
    std::vector<std::string> skip_notes;
    std::vector<ConeComparisonViolation> violations;

    bool all_pass() const { return violations.empty(); }
};

struct ConeProbeOptions {
    // Default subset family: every ball of radius 1..r_max around complete
    // vertices; default apex family: every vertex outside the subset.
    int r_max = 3;
    std::vector<double> slope_grid = {0.0, 0.25, 0.5, 1.0, 2.0};
    // Explicit families override the defaults.
    std::optional<std::vector<std::vector<Vertex>>> subsets;
    std::optional<std::vector<ConeComparisonSample>> cones;
    double tau = kDefaultTolerance;
};

// Samples the cone comparison property from above and below. A violation
// certifies the field is outside CCA/CCB; a clean report is evidence over the
// sampled family only. Samples whose apex lies inside the subset, whose
// closure leaves the reliably exposed region, or whose boundary is empty are
// skipped with a note.
ConeComparisonReport cca_ccb_probe(const Graph& g, const ScalarField& u,
                                   const ConeProbeOptions& opts = {});

struct LiouvilleReport {
    bool certified = false;
    std::string reason;                  // refusal explanation when not certified
    std::optional<Vertex> failing_vertex;
    int ball_radius = 0;                 // N actually used
    double cone_slope = 0.0;             // eps / d(x0, x1)
    double certified_lower_bound = 0.0;  // u(x0) - eps when certified
};

// Finite-ball probe of the strong Liouville property: verifies u >= 0 and
// superharmonicity on the exposed ball, then runs the single cone-comparison
// instance that forces u(x1) >= u(x0) - eps. Refuses, naming the obstacle,
// whenever the certificate cannot be established from the exposed data.
LiouvilleReport liouville_probe(const Graph& g, const ScalarField& u, Vertex x0, Vertex x1,
                                double eps, double tau = kDefaultTolerance);

}  // namespace ilap
