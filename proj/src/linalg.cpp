#include "nonbark/linalg.hpp"

#include <cmath>
#include <string>

#include "nonbark/errors.hpp"

namespace nonbark {

Operator Operator::identity(int dim) {
  Operator m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

StateVector apply(const Operator& m, const StateVector& x) {
  require_same_dim(m.n, x.dim(), "operator application");
  StateVector y(m.n);
  for (int c = 0; c < m.n; ++c) {
    Complex xc = x[c];
    for (int r = 0; r < m.n; ++r) y[r] += m.at(r, c) * xc;
  }
  return y;
}

Operator multiply(const Operator& a, const Operator& b) {
  require_same_dim(a.n, b.n, "operator product");
  Operator c(a.n);
  for (int j = 0; j < a.n; ++j) {
    for (int k = 0; k < a.n; ++k) {
      Complex bkj = b.at(k, j);
      if (bkj == Complex{0.0, 0.0}) continue;
      for (int i = 0; i < a.n; ++i) c.at(i, j) += a.at(i, k) * bkj;
    }
  }
  return c;
}

Operator adjoint(const Operator& m) {
  Operator t(m.n);
  for (int c = 0; c < m.n; ++c)
    for (int r = 0; r < m.n; ++r) t.at(c, r) = std::conj(m.at(r, c));
  return t;
}

Complex inner(const StateVector& x, const StateVector& y) {
  require_same_dim(x.dim(), y.dim(), "inner product");
  Complex s = 0.0;
  for (int i = 0; i < x.dim(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double norm(const StateVector& x) { return std::sqrt(std::real(inner(x, x))); }

StateVector normalized(const StateVector& x) {
  double nx = norm(x);
  if (nx == 0.0) throw Error("cannot normalize a zero vector");
  StateVector y = x;
  for (auto& c : y.a) c /= nx;
  return y;
}

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dim(a.n, b.n, "operator comparison");
  double m = 0.0;
  for (size_t i = 0; i < a.e.size(); ++i)
    m = std::max(m, std::abs(a.e[i] - b.e[i]));
  return m;
}

double unitarity_defect(const Operator& u) {
  Operator p = multiply(u, adjoint(u));
  return max_abs_diff(p, Operator::identity(u.n));
}

bool is_projector(const Operator& p, double tol) {
  if (max_abs_diff(p, adjoint(p)) > tol) return false;
  return max_abs_diff(multiply(p, p), p) <= tol;
}

Operator basis_projector(int dim, int k) {
  Operator p(dim);
  p.at(k, k) = 1.0;
  return p;
}

StateVector basis_state(int dim, int k) {
  StateVector s(dim);
  s[k] = 1.0;
  return s;
}

}  // namespace nonbark
