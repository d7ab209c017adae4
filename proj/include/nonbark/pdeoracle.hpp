#pragma once

#include <vector>

#include "nonbark/logcomplex.hpp"
#include "nonbark/series.hpp"
#include "nonbark/tunneling.hpp"

namespace nonbark {

// Uniform spatial grid plus time step for the implicit solver. The wall
// sits at x_min (Dirichlet zero); x_max must be far enough out that nothing
// reflects back during a run, which is the caller's responsibility.
struct Grid {
  double x_min;
  double x_max;
  int n_points;
  double dt;

  double dx() const { return (x_max - x_min) / (n_points - 1); }
  std::vector<double> coords() const;

  // The grid must resolve the carrier wavelength (k0 dx <= 0.1) and the
  // step must keep the carrier's phase advance per step small
  // (dt k0^2 / (2 mu) <= 0.05). Throws StabilityViolation otherwise.
  void validate_for(double k0, double mu) const;
};

// Delta barrier regularized as a top-hat: integrated weight `strength`
// spread over `width_w`. Sampling narrows the hat to at most one grid cell
// so it stays sub-wavelength on any valid grid.
struct BarrierProfile {
  double strength;
  double width_w;
};

// Cell-averaged samples of the top-hat on the grid. The samples times dx
// sum back to `strength` to round-off, which is the property that controls
// the effective barrier seen by long-wavelength components.
std::vector<double> barrier_samples(const BarrierProfile& barrier,
                                    const Grid& grid);

// Right-moving Gaussian exp(i k0 (x - center) - (x - center)^2 / (2 w^2)),
// endpoints zeroed, unit norm on the grid.
std::vector<Complex> gaussian_packet(const Grid& grid, double k0,
                                     double center, double width);

double norm_on_grid(const std::vector<Complex>& psi, const Grid& grid);

// Implicit time-centered step: (I + i dt/2 H) psi' = (I - i dt/2 H) psi
// with H = -(1/2mu) d2/dx2 + V, Dirichlet ends, solved by a precomputed
// tridiagonal factorization. Unitary on the grid up to round-off.
std::vector<Complex> evolve(const std::vector<Complex>& psi0,
                            const Grid& grid, const BarrierProfile& barrier,
                            double mu, double k0, long steps);

// Launches the packet at -L toward the barrier, runs 1.4 L/v, and returns
// the norm fraction past x = 0. Matches k0^2/(k0^2 + kappa^2) in the
// narrow-momentum regime. kappa = 0 is allowed here.
double transmission_probe(const TunnelParams& params, const Grid& grid);

// Grid sized for a weak-value run: dx = 0.1/k0, dt chosen at the phase
// budget, wall at -2L, right edge past the farthest train term at the later
// of the two evolution times.
Grid scaled_oracle_grid(const TunnelParams& params, double t_longest);

struct PdeWeakResult {
  WeakValueSeries series;
  Complex denominator;  // grid overlap integral, convention-dependent phase
};

// Fully numeric weak value: evolve the initial packet forward to t and,
// separately, to T - t; the pointwise product of the two runs is the
// numerator and its trapezoid integral the denominator, so the weak value
// integrates to one on the grid by construction.
PdeWeakResult weak_value_pde_run(const std::vector<double>& x_grid, double t,
                                 double big_t, const TunnelParams& params,
                                 const Grid& grid);
WeakValueSeries weak_value_pde(const std::vector<double>& x_grid, double t,
                               double big_t, const TunnelParams& params,
                               const Grid& grid);

// Free propagation of the same Gaussian in closed form (not normalized);
// width spreads as w^2 (1 + i t / (mu w^2)).
std::vector<Complex> free_packet_exact(const Grid& grid, double mu, double k0,
                                       double width, double center, double t);

// Max pointwise error of the solver against free_packet_exact at three
// resolutions, each halving dx and dt. Second-order stepping puts
// successive ratios near four.
std::vector<double> free_convergence_errors();

}  // namespace nonbark
