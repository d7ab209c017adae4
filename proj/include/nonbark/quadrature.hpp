#pragma once

#include <functional>

#include "nonbark/logcomplex.hpp"

namespace nonbark {

struct QuadResult {
  Complex value;
  double error;  // absolute estimate
  long evaluations;
};

// Globally adaptive Gauss-Kronrod 7/15 on [a, b]: the interval with the
// largest error estimate is bisected until the summed estimate drops below
// max(rel_tol * |integral|, abs_floor). Throws QuadratureFailure if the
// budget runs out while the relative estimate is still above 1e-8.
QuadResult integrate_adaptive(const std::function<Complex(double)>& f,
                              double a, double b, double rel_tol = 1e-10,
                              double abs_floor = 0.0,
                              int max_intervals = 200000);

}  // namespace nonbark
