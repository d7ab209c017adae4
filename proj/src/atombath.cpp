#include "nonbark/atombath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nonbark/errors.hpp"
#include "nonbark/weakvalue.hpp"

namespace nonbark {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr Complex kI{0.0, 1.0};

// e^w - 1 without cancellation; exactly zero at w = 0.
Complex cexpm1(Complex w) {
  double x = w.real(), y = w.imag();
  double re = std::expm1(x) * std::cos(y) - 2.0 * std::pow(std::sin(0.5 * y), 2);
  double im = std::exp(x) * std::sin(y);
  return {re, im};
}

}  // namespace

BathModel BathModel::calibrated(double gamma, int n_side, double band,
                                double e0) {
  if (gamma <= 0.0) throw Error("decay constant must be positive");
  if (n_side < 1) throw Error("bath needs at least one side level");
  if (band <= 0.0) band = 20.0 * gamma;
  double delta_e = band / n_side;
  double coupling = std::sqrt(gamma * delta_e / kPi);
  return {n_side, delta_e, coupling, e0, gamma};
}

int BathModel::index_of_level(int n) const {
  if (n < -n_side || n > n_side) {
    throw Error("bath level " + std::to_string(n) + " outside [-N, N]");
  }
  return 1 + (n + n_side);
}

void validate_window(const TimeWindow& w) {
  if (!(w.t_i <= w.t && w.t <= w.t_f)) {
    throw Error("time window must satisfy t_i <= t <= t_f");
  }
}

Complex evolution_element_analytic(const BathModel& m, int row, int col,
                                   double t) {
  auto element_n0 = [&](int idx) {
    int n = idx - 1 - m.n_side;
    double en = m.level_energy(n);
    Complex z{m.gamma, -n * m.delta_e};
    if (t == 0.0) return Complex{0.0, 0.0};
    return kI * m.coupling * std::exp(-kI * en * t) * cexpm1(-z * t) / z;
  };
  if (row == 0 && col == 0) {
    return std::exp(Complex{-m.gamma * std::fabs(t), -m.e0 * t});
  }
  if (col == 0 && row >= 1 && row < m.dim()) return element_n0(row);
  // The generator is a real symmetric matrix, so the evolution matrix is
  // complex symmetric and the (0, n) element equals the (n, 0) one.
  if (row == 0 && col >= 1 && col < m.dim()) return element_n0(col);
  throw UnsupportedElement("only the reference row/column elements exist in "
                           "closed form");
}

namespace {

// Amplitude equations in the rotating frame. Index 0 is the reference
// level, the rest are the comb; all phases are relative detunings, so the
// right-hand side costs O(dim).
struct RotatingFrameRhs {
  const BathModel& m;

  void operator()(double t, const std::vector<Complex>& y,
                  std::vector<Complex>& dy) const {
    int dim = m.dim();
    Complex acc = 0.0;
    for (int i = 1; i < dim; ++i) {
      int n = i - 1 - m.n_side;
      double w = -n * m.delta_e;  // reference energy minus level energy
      acc += y[static_cast<size_t>(i)] * std::polar(1.0, w * t);
    }
    dy[0] = -kI * m.coupling * acc;
    Complex y0 = y[0];
    for (int i = 1; i < dim; ++i) {
      int n = i - 1 - m.n_side;
      double w = -n * m.delta_e;
      dy[static_cast<size_t>(i)] = -kI * m.coupling * y0 *
                                   std::polar(1.0, -w * t);
    }
  }
};

void rk4_step(const RotatingFrameRhs& rhs, double t,
              const std::vector<Complex>& y, double h,
              std::vector<Complex>& out, std::vector<Complex>& k,
              std::vector<Complex>& tmp) {
  size_t n = y.size();
  rhs(t, y, k);  // k1
  for (size_t i = 0; i < n; ++i) {
    out[i] = y[i] + (h / 6.0) * k[i];
    tmp[i] = y[i] + (h / 2.0) * k[i];
  }
  rhs(t + h / 2.0, tmp, k);  // k2
  for (size_t i = 0; i < n; ++i) {
    out[i] += (h / 3.0) * k[i];
    tmp[i] = y[i] + (h / 2.0) * k[i];
  }
  rhs(t + h / 2.0, tmp, k);  // k3
  for (size_t i = 0; i < n; ++i) {
    out[i] += (h / 3.0) * k[i];
    tmp[i] = y[i] + h * k[i];
  }
  rhs(t + h, tmp, k);  // k4
  for (size_t i = 0; i < n; ++i) out[i] += (h / 6.0) * k[i];
}

constexpr double kOdeTolPerUnitTime = 1e-10;

// Integrates the rotating-frame equations from duration 0, converting to the
// lab frame at each requested duration. Step-doubling Richardson control:
// the half-step pair is kept, extrapolated by the (two - big)/15 defect.
std::vector<StateVector> integrate(const BathModel& m, const StateVector& start,
                                   const std::vector<double>& durations,
                                   double dt_max) {
  require_same_dim(m.dim(), start.dim(), "bath evolution start state");
  for (double d : durations) {
    if (d < 0.0) throw Error("evolution durations must be non-negative");
  }
  std::vector<size_t> order(durations.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return durations[a] < durations[b]; });

  RotatingFrameRhs rhs{m};
  std::vector<Complex> y = start.a;
  std::vector<Complex> big(y.size()), half(y.size()), two(y.size());
  std::vector<Complex> k(y.size()), tmp(y.size());

  double t = 0.0;
  double fastest = 1.0 + m.n_side * m.delta_e;
  double h = 0.1 / fastest;
  if (dt_max > 0.0) h = std::min(h, dt_max);

  auto to_lab_frame = [&](double at) {
    StateVector s(m.dim());
    s[0] = y[0] * std::polar(1.0, -m.e0 * at);
    for (int i = 1; i < m.dim(); ++i) {
      int n = i - 1 - m.n_side;
      s[i] = y[static_cast<size_t>(i)] *
             std::polar(1.0, -m.level_energy(n) * at);
    }
    return s;
  };

  std::vector<StateVector> results(durations.size());
  long steps = 0;
  for (size_t oi : order) {
    double target = durations[oi];
    while (t < target) {
      double step = std::min(h, target - t);
      while (true) {
        if (++steps > 80'000'000) {
          throw NonConvergence("step budget exhausted in bath evolution");
        }
        rk4_step(rhs, t, y, step, big, k, tmp);
        rk4_step(rhs, t, y, step / 2.0, half, k, tmp);
        rk4_step(rhs, t + step / 2.0, half, step / 2.0, two, k, tmp);
        double err = 0.0;
        for (size_t i = 0; i < y.size(); ++i) {
          err = std::max(err, std::abs(two[i] - big[i]) / 15.0);
        }
        double allowed = kOdeTolPerUnitTime * step;
        if (err <= allowed || step <= 1e-14 * std::max(1.0, target)) {
          if (step <= 1e-14 * std::max(1.0, target) && err > allowed) {
            throw NonConvergence("step control stalled in bath evolution");
          }
          for (size_t i = 0; i < y.size(); ++i) {
            y[i] = two[i] + (two[i] - big[i]) / 15.0;
          }
          t += step;
          double grow = err > 0.0 ? 0.9 * std::pow(allowed / err, 0.2) : 5.0;
          h = step * std::clamp(grow, 0.2, 5.0);
          if (dt_max > 0.0) h = std::min(h, dt_max);
          break;
        }
        step *= std::clamp(0.9 * std::pow(allowed / err, 0.2), 0.2, 0.9);
      }
    }
    results[oi] = to_lab_frame(target);
  }
  return results;
}

}  // namespace

std::vector<StateVector> evolve_states(const BathModel& m,
                                       const StateVector& start,
                                       const std::vector<double>& durations,
                                       double dt_max) {
  return integrate(m, start, durations, dt_max);
}

Operator evolve_oracle(const BathModel& m, double duration, double dt_max) {
  if (duration < 0.0) throw Error("evolution duration must be non-negative");
  if (dt_max <= 0.0) throw Error("dt_max must be positive");
  int dim = m.dim();
  Operator u(dim);
  for (int c = 0; c < dim; ++c) {
    auto column = integrate(m, basis_state(dim, c), {duration}, dt_max);
    for (int r = 0; r < dim; ++r) u.at(r, c) = column[0][r];
  }
  return u;
}

namespace {

Complex weak_value_analytic(const BathModel& m, const TimeWindow& w, int n) {
  Complex z{m.gamma, -n * m.delta_e};
  double s = w.t - w.t_i;
  double r = w.t_f - w.t;
  double h2 = m.coupling * m.coupling;
  return -h2 * cexpm1(z * s) * cexpm1(z * r) / (z * z);
}

struct NumericRuns {
  StateVector f;  // evolved over t - t_i
  StateVector g;  // evolved over t_f - t
};

NumericRuns numeric_runs(const BathModel& m, const TimeWindow& w) {
  StateVector start = basis_state(m.dim(), 0);
  auto states = evolve_states(m, start, {w.t - w.t_i, w.t_f - w.t});
  return {states[0], states[1]};
}

// Transpose contraction: the bra row of the second evolution equals its
// first column because the generator matrix is symmetric, so one forward
// run serves both directions.
Complex transpose_dot(const StateVector& g, const StateVector& f) {
  Complex s = 0.0;
  for (int i = 0; i < g.dim(); ++i) s += g[i] * f[i];
  return s;
}

}  // namespace

Complex weak_value_bath(const BathModel& m, const TimeWindow& w, int n,
                        BathMode mode) {
  validate_window(w);
  if (mode == BathMode::analytic) return weak_value_analytic(m, w, n);
  NumericRuns runs = numeric_runs(m, w);
  Complex den = transpose_dot(runs.g, runs.f);
  if (std::abs(den) < kDenominatorGuard) {
    throw VanishingOverlap("bath pre/post overlap vanished");
  }
  int idx = m.index_of_level(n);
  return runs.g[idx] * runs.f[idx] / den;
}

Complex bath_sum(const BathModel& m, const TimeWindow& w, BathMode mode) {
  validate_window(w);
  if (m.coupling == 0.0) return 0.0;
  if (mode == BathMode::analytic) {
    Complex s = 0.0;
    for (int n = -m.n_side; n <= m.n_side; ++n) {
      s += weak_value_analytic(m, w, n);
    }
    return s;
  }
  NumericRuns runs = numeric_runs(m, w);
  Complex den = transpose_dot(runs.g, runs.f);
  if (std::abs(den) < kDenominatorGuard) {
    throw VanishingOverlap("bath pre/post overlap vanished");
  }
  Complex s = 0.0;
  for (int i = 1; i < m.dim(); ++i) s += runs.g[i] * runs.f[i];
  return s / den;
}

Complex basis_sum_numeric(const BathModel& m, const TimeWindow& w) {
  validate_window(w);
  NumericRuns runs = numeric_runs(m, w);
  Complex den = transpose_dot(runs.g, runs.f);
  if (std::abs(den) < kDenominatorGuard) {
    throw VanishingOverlap("bath pre/post overlap vanished");
  }
  Complex num = 0.0;
  for (int i = 0; i < m.dim(); ++i) num += runs.g[i] * runs.f[i];
  return num / den;
}

double weak_value_resonant(double gamma, const TimeWindow& w,
                           double coupling) {
  validate_window(w);
  double s = w.t - w.t_i;
  double r = w.t_f - w.t;
  return -coupling * coupling * std::expm1(gamma * s) * std::expm1(gamma * r) /
         (gamma * gamma);
}

double weak_value_decayed(double gamma, const TimeWindow& w) {
  validate_window(w);
  if (w.t_f == w.t_i) {
    throw DegenerateWindow("decayed weak value needs t_f > t_i");
  }
  double surv = std::exp(-gamma * (w.t - w.t_i));
  return surv * (-std::expm1(-gamma * (w.t_f - w.t))) /
         (-std::expm1(-gamma * (w.t_f - w.t_i)));
}

}  // namespace nonbark
