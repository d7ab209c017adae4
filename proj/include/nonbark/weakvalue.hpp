#pragma once

#include "nonbark/linalg.hpp"

namespace nonbark {

// Denominator magnitudes below this are treated as an orthogonal pre/post
// pair: the weak value is undefined and the caller gets VanishingOverlap
// instead of Inf.
inline constexpr double kDenominatorGuard = 1e-300;

// <post| U_bwd^dag A U_fwd |pre> / <post| U_bwd^dag U_fwd |pre>.
Complex weak_value_general(const StateVector& pre, const StateVector& post,
                           const Operator& a, const Operator& u_fwd,
                           const Operator& u_bwd);

// |<psi|A|psi> - sum_i |<psi|phi_i>|^2 (<phi_i|A|psi> / <phi_i|psi>)|.
// Terms with overlap below kDenominatorGuard are skipped after checking
// that their contribution <psi|phi_i><phi_i|A|psi> is negligible.
double ensemble_identity_residual(const StateVector& psi, const Operator& a,
                                  const std::vector<StateVector>& basis);

// <post| U_total |pre>; the magnitude measures how rare the post-selected
// sub-ensemble is.
Complex postselection_amplitude(const StateVector& pre,
                                const StateVector& post,
                                const Operator& u_total);

}  // namespace nonbark
