#pragma once

#include <complex>

namespace nonbark {

using Complex = std::complex<double>;

// Complex number stored as (log|z|, arg z). Survives intermediate factors
// whose magnitude overflows double (log_mag up to ~1e308 instead of 709).
// Zero is encoded as log_mag = -infinity with phase 0.
struct LogComplex {
  double log_mag;
  double phase;  // kept in (-pi, pi]
};

// Wraps an angle into (-pi, pi].
double normalize_phase(double phi);

LogComplex lc_from(Complex z);
LogComplex lc_from_polar(double log_mag, double phase);
LogComplex lc_zero();
LogComplex lc_one();
LogComplex lc_real(double r);  // r may be negative (phase pi)

// Overflows to +-inf components if log_mag > ~709; callers arrange
// cancellations in log domain first.
Complex lc_to_complex(LogComplex a);

bool lc_is_zero(LogComplex a);
LogComplex lc_mul(LogComplex a, LogComplex b);
LogComplex lc_div(LogComplex a, LogComplex b);
LogComplex lc_neg(LogComplex a);
LogComplex lc_conj(LogComplex a);
LogComplex lc_pow_int(LogComplex a, long n);

// Addition by factoring out the larger magnitude. When the magnitudes are
// more than exp(700) apart the smaller term is swallowed and `truncated`
// reports it; the sum itself is still the best representable answer.
struct LogComplexSum {
  LogComplex value;
  bool truncated;
};
LogComplexSum lc_add(LogComplex a, LogComplex b);

}  // namespace nonbark
