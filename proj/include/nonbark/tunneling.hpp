#pragma once

#include <string>
#include <vector>

#include "nonbark/logcomplex.hpp"

namespace nonbark {

// Gaussian packet bouncing between a hard wall at x = -2L and a delta
// barrier of integrated strength kappa/mu at x = 0. The packet is prepared
// at -L moving right and post-selected at -L moving left after a time T;
// between those, the state is a train of Gaussian terms scaled by powers of
// the barrier reflection/transmission amplitudes.
struct TunnelParams {
  double b;      // packet width
  double mu;     // mass
  double kappa;  // barrier strength
  double k0;     // carrier wavenumber
  double L;      // wall at -2L, preparation at -L

  double v() const { return k0 / mu; }

  // Asymptotic-regime advisories (never errors): the train picture needs a
  // nearly monochromatic packet that is narrow on the well scale and does
  // not spread over the run. Pass the post-selection time to include the
  // spreading check; factors are the default safety margins.
  std::vector<std::string> regime_warnings(double t_total = 0.0,
                                           double bk0_factor = 10.0,
                                           double lb_factor = 10.0) const;
};
void validate_params(const TunnelParams& p);

struct RhoTau {
  Complex rho;
  Complex tau;
};
// Delta-barrier amplitudes: rho = -i kappa / (k0 + i kappa),
// tau = k0 / (k0 + i kappa); 1 + rho = tau and |rho|^2 + |tau|^2 = 1.
RhoTau reflection_transmission(double k0, double kappa);

struct GaussianTerm {
  LogComplex amplitude;
  int k_sign;           // direction of the e^{i k_sign k0 (x - center)} factor
  double center;
  double width;
  double phase_offset;  // extra phase, additive to the carrier
};

enum class Region { inside, outside };

struct TrainTerm {
  GaussianTerm g;
  Region region;
};

struct PacketTrain {
  std::vector<TrainTerm> terms;
  double time_stamp;

  // Piecewise by region: x in [-2L, 0) uses the inside terms, x >= 0 the
  // outside ones, x < -2L is behind the wall and identically zero.
  LogComplex evaluate_log(double x, const TunnelParams& p) const;
  Complex evaluate(double x, const TunnelParams& p) const;
};

// Barrier interactions suffered by the forward packet up to time t: the
// first hit is at t = L/v and the bounce period is 4L/v.
int interaction_count(const TunnelParams& p, double t);

// Forward train at time t. The inside part is a wall-image pair with
// amplitude rho^N; the outside part has N transmitted terms tau rho^{n-1}
// centered at v t - (4n - 3) L. Throws InvalidInteractionCount when the
// supplied count disagrees with interaction_count(t).
PacketTrain pre_train(const TunnelParams& p, double t, int count_n);

// Backward-evolved post-selected train at time t for post-selection time T:
// the complex conjugate of the forward train at T - t (left-moving carrier,
// conjugated amplitudes).
PacketTrain post_train(const TunnelParams& p, double t, double big_t,
                       int count_m);

// True when big_t is within tolerance of (4i+2) L/v for integer i >= 1;
// fills the index when requested.
bool supported_postselection_time(const TunnelParams& p, double big_t,
                                  int* index_out = nullptr);

// Overlap integral of the conjugated backward train against the forward
// train over both regions, by adaptive quadrature on merged windows around
// every term center. This is the weak-value denominator.
Complex overlap_quadrature(const TunnelParams& p, double t, double big_t);

// Same overlap in closed form; independent of t for supported times.
Complex denominator_closed(const TunnelParams& p, double t, double big_t);

// Pointwise weak value of the position projection, numerator from the train
// product and denominator from quadrature. Any 0 < t < big_t is accepted;
// outside the supported post-selection grid the result carries the train
// approximation's transitional ambiguity (see regime_warnings).
Complex weak_value_numeric(const TunnelParams& p, double x, double t,
                           double big_t);
// Grid version sharing one denominator evaluation.
std::vector<Complex> weak_value_numeric_grid(const TunnelParams& p,
                                             const std::vector<double>& xs,
                                             double t, double big_t);

// Closed form at a sweet spot labeled (n, m) with interaction totals (N, M),
// evaluated in the log domain so the e^{b^2 k0^2}-scale factors cancel
// before exponentiation. Symmetric under (n, N) <-> (m, M).
Complex weak_value_sweetspot(const TunnelParams& p, int n, int m, int big_n,
                             int big_m, double x);

// Closed form for the well interior at the single-bounce midpoint
// (big_t = 6L/v, t = 3L/v); other times go through weak_value_numeric.
Complex weak_value_inside(const TunnelParams& p, double x, double t,
                          double big_t);

struct SweetSpot {
  int n, m;          // transmission indices of the two trains
  int big_n, big_m;  // interaction totals at the spot time
  double x, t;
};

// All spots for big_t = (4i+2) L/v: pairs n, m >= 1 with n + m <= i + 1 and
// i + n - m odd, at t = T/2 + 2(n-m) L/v, x = v t - (4n-3) L. The even
// parity class lands exactly on barrier-interaction instants where the
// train bookkeeping is transitional, so those crossings are not spots.
std::vector<SweetSpot> sweet_spots(const TunnelParams& p, double big_t);

// Ratio between the closed-form weak values at diagonally neighboring
// spots, equal to rho^2 = kappa^2 / (i k0 - kappa)^2; magnitude below 1, so
// spot magnitudes grow outward from the barrier.
Complex neighbor_ratio(const TunnelParams& p);

// |w| at a spot's envelope center x = 2(N + M + 1 - n - m) L.
double spot_peak_magnitude(const TunnelParams& p, int n, int m, int big_n,
                           int big_m);
double spot_center(const TunnelParams& p, int n, int m, int big_n, int big_m);

}  // namespace nonbark
