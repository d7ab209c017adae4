#include "nonbark/rng.hpp"

#include <cmath>

namespace nonbark {

double Rng::uniform() {
  // 53 random bits into [0, 1).
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Complex Rng::cnormal() {
  double re = normal();
  double im = normal();
  return {re, im};
}

StateVector Rng::random_state(int dim) {
  StateVector s(dim);
  for (auto& c : s.a) c = cnormal();
  return normalized(s);
}

Operator Rng::random_unitary(int dim) {
  // Modified Gram-Schmidt on Gaussian columns; at these dimensions the
  // conditioning is more than adequate.
  std::vector<StateVector> cols;
  cols.reserve(static_cast<size_t>(dim));
  for (int c = 0; c < dim; ++c) {
    StateVector v(dim);
    for (auto& z : v.a) z = cnormal();
    for (const auto& q : cols) {
      Complex proj = inner(q, v);
      for (int i = 0; i < dim; ++i) v[i] -= proj * q[i];
    }
    cols.push_back(normalized(v));
  }
  Operator u(dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) u.at(r, c) = cols[static_cast<size_t>(c)][r];
  return u;
}

Operator Rng::random_hermitian(int dim) {
  Operator a = random_operator(dim);
  Operator h(dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r)
      h.at(r, c) = 0.5 * (a.at(r, c) + std::conj(a.at(c, r)));
  return h;
}

Operator Rng::random_operator(int dim) {
  Operator a(dim);
  for (auto& z : a.e) z = cnormal();
  return a;
}

}  // namespace nonbark
