#pragma once

#include "ilap/field.hpp"

namespace ilap {

// Exact homogeneous solve on a finite, fully materialized graph by steepest
// geodesic interpolation: repeatedly take the valued pair (a, b) of maximal
// slope (value difference over distance through unvalued vertices), fix the
// linear interpolation along one geodesic, and promote it to boundary.
// Deterministic tie-breaking: largest slope, then smallest (a, b), then the
// lexicographically smallest geodesic. Requires f == 0 everywhere.
ScalarField solve_exact_amle(const DirichletProblem& p);

}  // namespace ilap
