#pragma once

#include <cstdint>
#include <random>

#include "nonbark/linalg.hpp"

namespace nonbark {

// Deterministic random sources for the property suites. The Gaussian draw is
// hand-rolled Box-Muller on top of mt19937_64 so that a given seed produces
// the same stream on every standard library.
struct Rng {
  explicit Rng(uint64_t seed) : gen(seed) {}

  double uniform();  // [0, 1)
  double normal();
  Complex cnormal();

  StateVector random_state(int dim);      // normalized
  Operator random_unitary(int dim);       // Gram-Schmidt of a Gaussian matrix
  Operator random_hermitian(int dim);
  Operator random_operator(int dim);

  std::mt19937_64 gen;

 private:
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nonbark
