#pragma once

#include <vector>

#include "nonbark/logcomplex.hpp"

namespace nonbark {

struct StateVector {
  std::vector<Complex> a;

  StateVector() = default;
  explicit StateVector(int dim) : a(static_cast<size_t>(dim)) {}
  int dim() const { return static_cast<int>(a.size()); }
  Complex& operator[](int i) { return a[static_cast<size_t>(i)]; }
  Complex operator[](int i) const { return a[static_cast<size_t>(i)]; }
};

// Dense column-major square complex matrix. Dimensions in this project stay
// in the low thousands, so no sparsity or blocking.
struct Operator {
  int n = 0;
  std::vector<Complex> e;

  Operator() = default;
  explicit Operator(int dim)
      : n(dim), e(static_cast<size_t>(dim) * static_cast<size_t>(dim)) {}
  Complex& at(int r, int c) {
    return e[static_cast<size_t>(c) * static_cast<size_t>(n) +
             static_cast<size_t>(r)];
  }
  Complex at(int r, int c) const {
    return e[static_cast<size_t>(c) * static_cast<size_t>(n) +
             static_cast<size_t>(r)];
  }
  static Operator identity(int dim);
};

void require_same_dim(int a, int b, const char* what);

StateVector apply(const Operator& m, const StateVector& x);
Operator multiply(const Operator& a, const Operator& b);
Operator adjoint(const Operator& m);

// <x|y> with the conjugate on x.
Complex inner(const StateVector& x, const StateVector& y);
double norm(const StateVector& x);
StateVector normalized(const StateVector& x);

double max_abs_diff(const Operator& a, const Operator& b);
// max|U U^dag - I|, the unitarity defect.
double unitarity_defect(const Operator& u);
bool is_projector(const Operator& p, double tol);

Operator basis_projector(int dim, int k);
StateVector basis_state(int dim, int k);

}  // namespace nonbark
