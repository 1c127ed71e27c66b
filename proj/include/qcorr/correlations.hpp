#ifndef QCORR_CORRELATIONS_HPP
#define QCORR_CORRELATIONS_HPP

#include "qcorr/matrix.hpp"
#include "qcorr/model.hpp"

namespace qcorr {

// Bloch direction of a von Neumann measurement; the projectors are
// (I +- n.sigma)/2 with n = (sin t cos p, sin t sin p, cos t).
struct MeasurementAxis {
  double theta = 0.0;  // polar angle in [0, pi]
  double phi = 0.0;    // azimuthal angle in [0, 2*pi)

  Matrix projector(int sign) const;  // sign is +1 or -1
};

enum class Side { A, B };

// All correlation quantities of one two-qubit state, in bits. s1/s2 carry
// the two conditional-entropy branches of the X-state closed form; the
// measurement-optimization path fills both with the achieved minimum.
struct DiscordBreakdown {
  double mutual_information = 0.0;
  double classical_correlation = 0.0;
  double discord = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
};

// Binary entropy of the pair ((1-t)/2, (1+t)/2); t is clamped to [0, 1]
// against rounding overshoot.
double h_theta(double t);

// S(rho_A) + S(rho_B) - S(rho_AB).
double mutual_information(const Matrix& rho);

// Maximum of S(rho_kept) - sum_i p_i S(rho_kept^i) over von Neumann
// measurements on `measured`: coarse 64x128 grid in (theta, phi) followed
// by deterministic coordinate refinement to 1e-8 in the objective.
std::pair<double, MeasurementAxis> classical_correlation_oracle(const Matrix& rho,
                                                                Side measured);

// Mutual information minus the measurement optimum on side B (the
// convention used throughout): the brute-force route.
DiscordBreakdown discord_oracle(const Matrix& rho);

// Closed form for X states: Q = S(rho_1) + sum_k lambda_k log2 lambda_k
// + min{S1, S2}, with lambda_k in {u, v, w +- |y|}/norm.
DiscordBreakdown discord_xstate(const XState& x);

// Closed-form discord of the reduced thermal pair.
double thermal_discord(const ModelParams& p);

// Wootters concurrence via the eigenvalues of rho * (sy x sy) rho* (sy x sy).
double concurrence(const Matrix& rho);

// X-form shortcut 2 max{0, |y| - sqrt(u v)}/norm.
double concurrence_xstate(const XState& x);

}  // namespace qcorr

#endif
