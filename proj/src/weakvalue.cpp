#include "nonbark/weakvalue.hpp"

#include <cmath>
#include <string>

#include "nonbark/errors.hpp"

namespace nonbark {

Complex weak_value_general(const StateVector& pre, const StateVector& post,
                           const Operator& a, const Operator& u_fwd,
                           const Operator& u_bwd) {
  require_same_dim(pre.dim(), post.dim(), "weak value pre/post");
  require_same_dim(pre.dim(), a.n, "weak value operator");
  require_same_dim(pre.dim(), u_fwd.n, "weak value forward evolution");
  require_same_dim(pre.dim(), u_bwd.n, "weak value backward evolution");

  // <post| U_bwd^dag = (U_bwd |post>)^dag, so two matrix-vector products
  // and two inner products cover both numerator and denominator.
  StateVector f = apply(u_fwd, pre);
  StateVector g = apply(u_bwd, post);
  Complex den = inner(g, f);
  if (std::abs(den) < kDenominatorGuard) {
    throw VanishingOverlap("pre/post overlap magnitude " +
                           std::to_string(std::abs(den)));
  }
  Complex num = inner(g, apply(a, f));
  return num / den;
}

double ensemble_identity_residual(const StateVector& psi, const Operator& a,
                                  const std::vector<StateVector>& basis) {
  int dim = psi.dim();
  require_same_dim(dim, a.n, "ensemble identity operator");
  if (static_cast<int>(basis.size()) != dim) {
    throw IncompleteBasis("basis has " + std::to_string(basis.size()) +
                          " elements for dimension " + std::to_string(dim));
  }
  for (size_t i = 0; i < basis.size(); ++i) {
    require_same_dim(dim, basis[i].dim(), "ensemble identity basis element");
    for (size_t j = 0; j <= i; ++j) {
      Complex ov = inner(basis[i], basis[j]);
      double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(ov - target) > 1e-10) {
        throw IncompleteBasis("basis fails orthonormality at pair (" +
                              std::to_string(i) + ", " + std::to_string(j) +
                              ")");
      }
    }
  }

  Complex lhs = inner(psi, apply(a, psi));
  StateVector apsi = apply(a, psi);
  Complex rhs = 0.0;
  for (const auto& phi : basis) {
    Complex ov = inner(phi, psi);  // <phi|psi>
    Complex cross = inner(psi, phi) * inner(phi, apsi);
    if (std::abs(ov) < kDenominatorGuard) {
      // The term's weak value is undefined but its weight vanishes faster;
      // verify the product really is negligible before dropping it.
      if (std::abs(cross) > 1e-12) {
        throw VanishingOverlap(
            "zero-overlap basis term carries non-negligible weight");
      }
      continue;
    }
    Complex weight = std::norm(ov);
    Complex w = inner(phi, apsi) / ov;
    rhs += weight * w;
  }
  return std::abs(lhs - rhs);
}

Complex postselection_amplitude(const StateVector& pre,
                                const StateVector& post,
                                const Operator& u_total) {
  require_same_dim(pre.dim(), post.dim(), "postselection amplitude states");
  require_same_dim(pre.dim(), u_total.n, "postselection amplitude evolution");
  return inner(post, apply(u_total, pre));
}

}  // namespace nonbark
