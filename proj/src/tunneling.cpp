#include "nonbark/tunneling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nonbark/errors.hpp"
#include "nonbark/quadrature.hpp"
#include "nonbark/weakvalue.hpp"

namespace nonbark {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kWindowHalfWidths = 12.0;  // integration reach in units of b
}  // namespace

void validate_params(const TunnelParams& p) {
  if (p.b <= 0.0 || p.mu <= 0.0 || p.kappa <= 0.0 || p.k0 <= 0.0 ||
      p.L <= 0.0) {
    throw Error("packet/barrier parameters must all be positive");
  }
}

std::vector<std::string> TunnelParams::regime_warnings(double t_total,
                                                       double bk0_factor,
                                                       double lb_factor) const {
  std::vector<std::string> out;
  double bk0 = b * k0;
  double lb = L / b;
  if (bk0 < bk0_factor * lb) {
    out.push_back("b*k0 = " + std::to_string(bk0) + " is below " +
                  std::to_string(bk0_factor) + " * L/b = " +
                  std::to_string(bk0_factor * lb) +
                  "; packet momentum spread blurs the bounce amplitudes");
  }
  if (lb < lb_factor) {
    out.push_back("L/b = " + std::to_string(lb) + " is below " +
                  std::to_string(lb_factor) +
                  "; train terms overlap each other and the wall");
  }
  if (t_total > 0.0 && t_total / (mu * b * b) > 0.2) {
    out.push_back("run time " + std::to_string(t_total) +
                  " spreads the packet by more than ~10% (t/(mu b^2) = " +
                  std::to_string(t_total / (mu * b * b)) +
                  "); frozen-width train amplitudes degrade");
  }
  return out;
}

RhoTau reflection_transmission(double k0, double kappa) {
  if (k0 <= 0.0 || kappa < 0.0) {
    throw Error("need k0 > 0 and kappa >= 0 for barrier amplitudes");
  }
  Complex den{k0, kappa};
  return {Complex{0.0, -kappa} / den, k0 / den};
}

LogComplex PacketTrain::evaluate_log(double x, const TunnelParams& p) const {
  Region want = x < 0.0 ? Region::inside : Region::outside;
  if (x < -2.0 * p.L) return lc_zero();
  LogComplex sum = lc_zero();
  for (const auto& term : terms) {
    if (term.region != want) continue;
    const GaussianTerm& g = term.g;
    double d = x - g.center;
    LogComplex val = lc_from_polar(
        g.amplitude.log_mag - d * d / (2.0 * g.width * g.width),
        g.amplitude.phase + g.k_sign * p.k0 * d + g.phase_offset);
    sum = lc_add(sum, val).value;
  }
  return sum;
}

Complex PacketTrain::evaluate(double x, const TunnelParams& p) const {
  return lc_to_complex(evaluate_log(x, p));
}

int interaction_count(const TunnelParams& p, double t) {
  return static_cast<int>(std::floor((p.v() * t / p.L + 3.0) / 4.0));
}

PacketTrain pre_train(const TunnelParams& p, double t, int count_n) {
  validate_params(p);
  if (t < 0.0) throw Error("forward train time must be non-negative");
  if (count_n != interaction_count(p, t)) {
    throw InvalidInteractionCount(
        "count " + std::to_string(count_n) + " does not match time " +
        std::to_string(t) + " (expected " +
        std::to_string(interaction_count(p, t)) + ")");
  }
  RhoTau rt = reflection_transmission(p.k0, p.kappa);
  LogComplex rho = lc_from(rt.rho);
  LogComplex tau = lc_from(rt.tau);
  LogComplex global = lc_from_polar(0.0, 0.5 * p.k0 * p.v() * t);

  PacketTrain train;
  train.time_stamp = t;
  double vt = p.v() * t;
  for (int n = 1; n <= count_n; ++n) {
    LogComplex amp = lc_mul(global, lc_mul(tau, lc_pow_int(rho, n - 1)));
    train.terms.push_back(
        {{amp, +1, vt - (4 * n - 3) * p.L, p.b, 0.0}, Region::outside});
  }
  // Wall-image pair: a right-mover and its negated mirror image cancel
  // exactly at x = -2L for every t.
  LogComplex inside_amp = lc_mul(global, lc_pow_int(rho, count_n));
  train.terms.push_back(
      {{inside_amp, +1, vt - (4 * count_n + 1) * p.L, p.b, 0.0},
       Region::inside});
  train.terms.push_back(
      {{lc_neg(inside_amp), -1, (4 * count_n - 3) * p.L - vt, p.b, 0.0},
       Region::inside});
  return train;
}

PacketTrain post_train(const TunnelParams& p, double t, double big_t,
                       int count_m) {
  if (t < 0.0 || t > big_t) {
    throw Error("post-selected train time must lie in [0, T]");
  }
  double mirror_time = big_t - t;
  if (count_m != interaction_count(p, mirror_time)) {
    throw InvalidInteractionCount(
        "count " + std::to_string(count_m) + " does not match time " +
        std::to_string(t) + " (expected " +
        std::to_string(interaction_count(p, mirror_time)) + ")");
  }
  PacketTrain train = pre_train(p, mirror_time, count_m);
  train.time_stamp = t;
  for (auto& term : train.terms) {
    term.g.amplitude = lc_conj(term.g.amplitude);
    term.g.k_sign = -term.g.k_sign;
    term.g.phase_offset = -term.g.phase_offset;
  }
  return train;
}

bool supported_postselection_time(const TunnelParams& p, double big_t,
                                  int* index_out) {
  double u = big_t * p.v() / p.L;  // must be 4i + 2
  double i_real = (u - 2.0) / 4.0;
  double i_round = std::round(i_real);
  if (i_round < 1.0 || std::fabs(i_real - i_round) > 1e-9 * std::max(1.0, u)) {
    return false;
  }
  if (index_out) *index_out = static_cast<int>(i_round);
  return true;
}

namespace {

struct Window {
  double lo, hi;
};

// Windows of +-12b around every term center of both trains, clipped to the
// term's region and merged per region so the integrand stays one-piece on
// each interval.
std::vector<Window> product_windows(const TunnelParams& p,
                                    const PacketTrain& fwd,
                                    const PacketTrain& bwd) {
  std::vector<Window> inside, outside;
  auto collect = [&](const PacketTrain& train) {
    for (const auto& term : train.terms) {
      double reach = kWindowHalfWidths * term.g.width;
      double lo = term.g.center - reach;
      double hi = term.g.center + reach;
      if (term.region == Region::inside) {
        lo = std::max(lo, -2.0 * p.L);
        hi = std::min(hi, 0.0);
        if (lo < hi) inside.push_back({lo, hi});
      } else {
        lo = std::max(lo, 0.0);
        if (lo < hi) outside.push_back({lo, hi});
      }
    }
  };
  collect(fwd);
  collect(bwd);
  auto merge = [](std::vector<Window>& ws) {
    std::sort(ws.begin(), ws.end(),
              [](const Window& a, const Window& b) { return a.lo < b.lo; });
    std::vector<Window> merged;
    for (const auto& w : ws) {
      if (!merged.empty() && w.lo <= merged.back().hi) {
        merged.back().hi = std::max(merged.back().hi, w.hi);
      } else {
        merged.push_back(w);
      }
    }
    ws = std::move(merged);
  };
  merge(inside);
  merge(outside);
  std::vector<Window> all = inside;
  all.insert(all.end(), outside.begin(), outside.end());
  return all;
}

Complex integrate_product(const TunnelParams& p, const PacketTrain& fwd,
                          const PacketTrain& bwd) {
  auto integrand = [&](double x) {
    LogComplex prod =
        lc_mul(lc_conj(bwd.evaluate_log(x, p)), fwd.evaluate_log(x, p));
    return lc_to_complex(prod);
  };
  Complex total = 0.0;
  for (const auto& w : product_windows(p, fwd, bwd)) {
    // Scale the tolerance floor from a coarse scan so windows holding only
    // one train's tail terminate instead of chasing relative accuracy on a
    // value that is essentially zero.
    double peak = 0.0;
    for (int i = 0; i <= 32; ++i) {
      double x = w.lo + (w.hi - w.lo) * i / 32.0;
      peak = std::max(peak, std::abs(integrand(x)));
    }
    double floor = 1e-12 * peak * (w.hi - w.lo);
    total += integrate_adaptive(integrand, w.lo, w.hi, 1e-10, floor).value;
  }
  return total;
}

}  // namespace

Complex overlap_quadrature(const TunnelParams& p, double t, double big_t) {
  validate_params(p);
  PacketTrain fwd = pre_train(p, t, interaction_count(p, t));
  PacketTrain bwd =
      post_train(p, t, big_t, interaction_count(p, big_t - t));
  return integrate_product(p, fwd, bwd);
}

namespace {

LogComplex bracket_factor(const TunnelParams& p, int k_min) {
  RhoTau rt = reflection_transmission(p.k0, p.kappa);
  LogComplex rho = lc_from(rt.rho);
  Complex k2ik{p.k0, 2.0 * p.kappa};
  LogComplex tail = lc_add(lc_mul(lc_real(p.k0), lc_pow_int(rho, -2 * k_min)),
                           lc_from(Complex{0.0, 2.0 * p.kappa}))
                        .value;
  tail = lc_mul(tail, lc_from_polar(-p.b * p.b * p.k0 * p.k0, 0.0));
  tail = lc_div(tail, lc_from(k2ik));
  return lc_add(lc_one(), lc_neg(tail)).value;
}

}  // namespace

Complex denominator_closed(const TunnelParams& p, double t, double big_t) {
  validate_params(p);
  if (t < 0.0 || t > big_t) throw Error("time must lie in [0, T]");
  int big_n = interaction_count(p, t);
  int big_m = interaction_count(p, big_t - t);
  RhoTau rt = reflection_transmission(p.k0, p.kappa);
  LogComplex rho = lc_from(rt.rho);
  int s = big_n + big_m;
  int delta = std::abs(big_n - big_m);
  Complex k2ik{p.k0, 2.0 * p.kappa};

  LogComplex main = lc_neg(lc_pow_int(rho, s));
  LogComplex corr =
      lc_add(lc_mul(lc_real(p.k0), lc_pow_int(rho, delta)),
             lc_mul(lc_from(Complex{0.0, 2.0 * p.kappa}), lc_pow_int(rho, s)))
          .value;
  corr = lc_mul(corr, lc_from_polar(-p.b * p.b * p.k0 * p.k0, 0.0));
  corr = lc_div(corr, lc_from(k2ik));
  LogComplex sum = lc_add(main, corr).value;
  LogComplex pref = lc_mul(lc_real(std::sqrt(kPi) * p.b),
                           lc_from_polar(0.0, 0.5 * p.k0 * p.v() * big_t));
  return lc_to_complex(lc_mul(pref, sum));
}

Complex weak_value_numeric(const TunnelParams& p, double x, double t,
                           double big_t) {
  std::vector<double> xs{x};
  return weak_value_numeric_grid(p, xs, t, big_t)[0];
}

std::vector<Complex> weak_value_numeric_grid(const TunnelParams& p,
                                             const std::vector<double>& xs,
                                             double t, double big_t) {
  validate_params(p);
  PacketTrain fwd = pre_train(p, t, interaction_count(p, t));
  PacketTrain bwd =
      post_train(p, t, big_t, interaction_count(p, big_t - t));
  Complex den = integrate_product(p, fwd, bwd);
  if (std::abs(den) < kDenominatorGuard) {
    throw VanishingOverlap("train overlap integral vanished");
  }
  std::vector<Complex> out;
  out.reserve(xs.size());
  for (double x : xs) {
    LogComplex num =
        lc_mul(lc_conj(bwd.evaluate_log(x, p)), fwd.evaluate_log(x, p));
    out.push_back(lc_to_complex(num) / den);
  }
  return out;
}

double spot_center(const TunnelParams& p, int n, int m, int big_n,
                   int big_m) {
  return 2.0 * (big_n + big_m + 1 - n - m) * p.L;
}

Complex weak_value_sweetspot(const TunnelParams& p, int n, int m, int big_n,
                             int big_m, double x) {
  validate_params(p);
  if (n < 1 || m < 1 || big_n < 1 || big_m < 1 || n > big_n || m > big_m) {
    throw InvalidIndices("need 1 <= n <= N and 1 <= m <= M");
  }
  RhoTau rt = reflection_transmission(p.k0, p.kappa);
  LogComplex rho = lc_from(rt.rho);
  LogComplex tau = lc_from(rt.tau);
  int s = big_n + big_m;
  int k_min = std::min(big_n, big_m);
  double center = spot_center(p, n, m, big_n, big_m);

  double d = x - center;
  LogComplex envelope =
      lc_from_polar(-d * d / (p.b * p.b), 2.0 * p.k0 * d);
  LogComplex numerator = lc_neg(lc_mul(
      lc_mul(lc_pow_int(tau, 2), lc_pow_int(rho, n + m - 2 - s)), envelope));
  LogComplex denom = lc_mul(lc_real(std::sqrt(kPi) * p.b),
                            bracket_factor(p, k_min));
  return lc_to_complex(lc_div(numerator, denom));
}

Complex weak_value_inside(const TunnelParams& p, double x, double t,
                          double big_t) {
  validate_params(p);
  int index = 0;
  if (!supported_postselection_time(p, big_t, &index) || index != 1) {
    throw InvalidPostselectionTime(
        "closed interior form is pinned to T = 6 L/v");
  }
  if (std::fabs(t - 0.5 * big_t) > 1e-9 * big_t) {
    throw InvalidPostselectionTime(
        "closed interior form is pinned to the midpoint t = T/2");
  }
  if (x < -2.0 * p.L || x >= 0.0) {
    throw OutOfRegion("interior form needs -2L <= x < 0");
  }
  int count = interaction_count(p, 0.5 * big_t);
  double u = x + 2.0 * p.L;
  double sin_part = std::sin(p.k0 * u);
  LogComplex numerator =
      lc_mul(lc_real(4.0 * sin_part * sin_part),
             lc_from_polar(-u * u / (p.b * p.b), 0.0));
  LogComplex denom =
      lc_mul(lc_real(std::sqrt(kPi) * p.b), bracket_factor(p, count));
  return lc_to_complex(lc_div(numerator, denom));
}

std::vector<SweetSpot> sweet_spots(const TunnelParams& p, double big_t) {
  validate_params(p);
  int i = 0;
  if (!supported_postselection_time(p, big_t, &i)) {
    throw InvalidPostselectionTime(
        "spot enumeration needs T = (4i + 2) L/v with integer i >= 1");
  }
  std::vector<SweetSpot> spots;
  for (int n = 1; n <= i; ++n) {
    for (int m = 1; n + m <= i + 1; ++m) {
      if ((i + n - m) % 2 == 0) continue;  // transitional crossing, not a spot
      double t = 0.5 * big_t + 2.0 * (n - m) * p.L / p.v();
      double x = p.v() * t - (4 * n - 3) * p.L;
      SweetSpot spot{n, m, interaction_count(p, t),
                     interaction_count(p, big_t - t), x, t};
      spots.push_back(spot);
    }
  }
  std::sort(spots.begin(), spots.end(), [](const SweetSpot& a,
                                           const SweetSpot& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.x < b.x;
  });
  return spots;
}

Complex neighbor_ratio(const TunnelParams& p) {
  validate_params(p);
  Complex rho = reflection_transmission(p.k0, p.kappa).rho;
  return rho * rho;
}

double spot_peak_magnitude(const TunnelParams& p, int n, int m, int big_n,
                           int big_m) {
  return std::abs(weak_value_sweetspot(p, n, m, big_n, big_m,
                                       spot_center(p, n, m, big_n, big_m)));
}

}  // namespace nonbark
