#pragma once

#include <vector>

#include "nonbark/linalg.hpp"

namespace nonbark {

// Discrete decay model: one reference excited level coupled with equal real
// strength to 2N+1 equispaced levels. Basis index 0 is the reference level;
// index 1 + (n + N) is the level detuned by n * delta_e, n = -N..N. The
// single-excitation space therefore has dimension 2N + 2.
struct BathModel {
  int n_side;        // N
  double delta_e;    // level spacing
  double coupling;   // H, real
  double e0;         // reference level energy
  double gamma;      // golden-rule decay constant, pi H^2 / delta_e

  // Picks delta_e = band / N and H = sqrt(gamma delta_e / pi), so the level
  // comb spans [-band, band] around the reference energy regardless of N.
  // band <= 0 selects the default 20 * gamma. The band sets the systematic
  // truncation error (proportional to gamma/band); N sets the comb density.
  static BathModel calibrated(double gamma, int n_side, double band = 0.0,
                              double e0 = 0.0);

  int dim() const { return 2 * n_side + 2; }
  int index_of_level(int n) const;  // n in [-N, N] -> basis index
  double level_energy(int n) const { return e0 + n * delta_e; }
};

struct TimeWindow {
  double t_i;
  double t;
  double t_f;
};
void validate_window(const TimeWindow& w);

enum class BathMode { analytic, numeric };

// Continuum-limit evolution elements. Supported index pairs: (0,0), (i,0)
// and (0,i) with i >= 1 a bath basis index; anything else throws
// UnsupportedElement. The matrix is symmetric (real symmetric generator),
// so (0,i) equals (i,0).
Complex evolution_element_analytic(const BathModel& m, int row, int col,
                                   double t);

// Full (2N+2)-dim evolution matrix from columnwise integration of the
// coupled amplitude equations in the rotating frame, with step-doubling
// error control at tolerance 1e-10 per unit time.
Operator evolve_oracle(const BathModel& m, double duration, double dt_max);

// One forward run from `start`, returning the state at each requested
// duration (times must be non-negative; output order matches input order).
std::vector<StateVector> evolve_states(const BathModel& m,
                                       const StateVector& start,
                                       const std::vector<double>& durations,
                                       double dt_max = 0.0);

// Weak value of the projector onto bath level n, pre/post-selected on the
// reference level at t_i and t_f. Analytic mode evaluates the closed form
// with pole z = gamma - i n delta_e:
//   w_n = -H^2 expm1(z (t - t_i)) expm1(z (t_f - t)) / z^2,
// which vanishes identically at both window ends. Numeric mode evolves
// basis columns of the truncated model; the two agree up to the band
// truncation error.
Complex weak_value_bath(const BathModel& m, const TimeWindow& w, int n,
                        BathMode mode);

// Sum of w_n over the bath levels n = -N..N. In numeric mode this equals
// 1 - w_ref by completeness; in analytic mode it tends to 0 from above as
// the comb densifies at fixed delta_e.
Complex bath_sum(const BathModel& m, const TimeWindow& w, BathMode mode);

// Numeric-mode weak-value sum over every basis projector (reference
// included); equals 1 by completeness.
Complex basis_sum_numeric(const BathModel& m, const TimeWindow& w);

// Closed form at zero detuning; real for every window.
double weak_value_resonant(double gamma, const TimeWindow& w, double coupling);

// Survival weak value of the decayed (reference) level:
//   e^{-gamma (t - t_i)} (1 - e^{-gamma (t_f - t)}) / (1 - e^{-gamma T}).
double weak_value_decayed(double gamma, const TimeWindow& w);

}  // namespace nonbark
