#include "nonbark/logcomplex.hpp"

#include <cmath>
#include <limits>

#include "nonbark/errors.hpp"

namespace nonbark {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTruncationGap = 700.0;
const double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

double normalize_phase(double phi) {
  double p = std::remainder(phi, 2.0 * kPi);
  if (p <= -kPi) p += 2.0 * kPi;
  return p;
}

LogComplex lc_from(Complex z) {
  double m = std::abs(z);
  if (m == 0.0) return {kNegInf, 0.0};
  return {std::log(m), std::arg(z)};
}

LogComplex lc_from_polar(double log_mag, double phase) {
  return {log_mag, normalize_phase(phase)};
}

LogComplex lc_zero() { return {kNegInf, 0.0}; }

LogComplex lc_one() { return {0.0, 0.0}; }

LogComplex lc_real(double r) {
  if (r == 0.0) return lc_zero();
  return {std::log(std::fabs(r)), r > 0.0 ? 0.0 : kPi};
}

Complex lc_to_complex(LogComplex a) {
  if (lc_is_zero(a)) return {0.0, 0.0};
  double m = std::exp(a.log_mag);
  return {m * std::cos(a.phase), m * std::sin(a.phase)};
}

bool lc_is_zero(LogComplex a) { return a.log_mag == kNegInf; }

LogComplex lc_mul(LogComplex a, LogComplex b) {
  if (lc_is_zero(a) || lc_is_zero(b)) return lc_zero();
  return {a.log_mag + b.log_mag, normalize_phase(a.phase + b.phase)};
}

LogComplex lc_div(LogComplex a, LogComplex b) {
  if (lc_is_zero(b)) throw Error("log-domain division by zero");
  if (lc_is_zero(a)) return lc_zero();
  return {a.log_mag - b.log_mag, normalize_phase(a.phase - b.phase)};
}

LogComplex lc_neg(LogComplex a) {
  if (lc_is_zero(a)) return a;
  return {a.log_mag, normalize_phase(a.phase + kPi)};
}

LogComplex lc_conj(LogComplex a) {
  return {a.log_mag, normalize_phase(-a.phase)};
}

LogComplex lc_pow_int(LogComplex a, long n) {
  if (lc_is_zero(a)) {
    if (n > 0) return lc_zero();
    if (n == 0) return lc_one();
    throw Error("log-domain reciprocal power of zero");
  }
  return {a.log_mag * static_cast<double>(n),
          normalize_phase(a.phase * static_cast<double>(n))};
}

LogComplexSum lc_add(LogComplex a, LogComplex b) {
  if (lc_is_zero(a)) return {b, false};
  if (lc_is_zero(b)) return {a, false};
  LogComplex big = a, small = b;
  if (b.log_mag > a.log_mag) {
    big = b;
    small = a;
  }
  double gap = big.log_mag - small.log_mag;
  if (gap >= kTruncationGap) return {big, true};
  // a + b = big * (1 + small/big); the ratio is representable by construction.
  Complex ratio = std::exp(-gap) * Complex{std::cos(small.phase - big.phase),
                                           std::sin(small.phase - big.phase)};
  Complex bracket = 1.0 + ratio;
  double bm = std::abs(bracket);
  if (bm == 0.0) return {lc_zero(), false};  // exact cancellation
  return {{big.log_mag + std::log(bm),
           normalize_phase(big.phase + std::arg(bracket))},
          false};
}

}  // namespace nonbark
