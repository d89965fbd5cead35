#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ilap/calculus.hpp"
#include "ilap/field.hpp"

namespace ilap {

enum class Side { Upper, Lower };

// Parameters of the quadratic profiles
//   lower: q(r) = a - b r + c r(r-1)/2,   upper: q(r) = a + b r - c r(r-1)/2.
struct BarrierSpec {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    int radius = 1;  // R
};

double quad_lower(const BarrierSpec& s, int r);
double quad_upper(const BarrierSpec& s, int r);
double quad(const BarrierSpec& s, int r, Side side);

// Q(x) = q(d(V', x)) over the whole exposed graph. Throws TruncationError
// when any exposed distance to the anchor set is not exact.
ScalarField radial_quadratic(const Graph& g, std::span<const Vertex> anchors,
                             const BarrierSpec& s, Side side);

// Graph augmentation: for every boundary vertex y != y0, a fresh path of R-1
// new vertices from y0 to y, so that d'(y0, y) = min(d(y0, y), R) and
// d'(y0, x) <= width + R on the interior.
struct AugmentedGraph {
    std::shared_ptr<const Graph> graph;
    std::vector<Vertex> added;  // fresh ids of the new path vertices
};

AugmentedGraph augment_with_boundary_paths(const Graph& g, const Partition& part, Vertex y0,
                                           int radius);

struct BarrierResult {
    AugmentedGraph augmented;
    ScalarField field;      // on all vertices of the augmented graph
    BarrierSpec spec;       // with a, b resolved
    Vertex anchor;
};

// Quadratic barrier anchored at a boundary vertex. Resolves
//   a = sup (upper) or inf (lower) of g over {y in Y : d(y0, y) < R},
//   b = 2 ||g||_inf / R + c (W + R),
// and returns the induced radial field on the augmented graph. Requires a
// known finite width bound; c must dominate ||f||_inf when the result is used
// to enclose solutions.
BarrierResult barrier_field(const Graph& g, const Partition& part, const ScalarField& gdata,
                            Vertex y0, double c, int radius, Side side);

// Pointwise min over all boundary anchors of the R=1 upper barrier (resp. max
// of the lower barrier), restricted to the original vertex set. The envelope
// keeps the one-sided operator bound of its members, matches the boundary
// data exactly, and is the solver's default starting iterate.
ScalarField barrier_envelope(const DirichletProblem& p, double c, Side side);

}  // namespace ilap
