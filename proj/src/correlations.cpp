#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr double kPi = 3.14159265358979323846;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Entropy of a qubit state from its Bloch-vector length.
double qubit_entropy(const Matrix& rho2) {
  // Eigenvalues of a 2x2 Hermitian matrix in closed form.
  const double a = rho2(0, 0).real();
  const double d = rho2(1, 1).real();
  const double off = std::abs(rho2(0, 1));
  const double mid = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  return -xlog2x(std::max(0.0, mid + rad)) - xlog2x(std::max(0.0, mid - rad));
}

// Average conditional entropy of the kept qubit after measuring `measured`
// along `axis`. The textbook route: project, renormalize, reduce.
double conditional_entropy(const Matrix& rho, Side measured, const MeasurementAxis& axis) {
  double total = 0.0;
  for (int sign : {+1, -1}) {
    const Matrix pi2 = axis.projector(sign);
    const Matrix proj = (measured == Side::B) ? kron(identity2(), pi2) : kron(pi2, identity2());
    const Matrix branch = proj * rho * proj;
    const double prob = trace(branch).real();
    if (prob <= 1e-12) continue;
    const Matrix kept = qubit_marginal(branch, measured == Side::B ? 0 : 1);
    total += prob * qubit_entropy((1.0 / prob) * kept);
  }
  return total;
}

// Golden-section minimization of f over [lo, hi]; deterministic,
// tie-stable, ~1e-12 bracket after 60 shrinks on O(1) intervals.
template <typename F>
std::pair<double, double> golden_min(F f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace

Matrix MeasurementAxis::projector(int sign) const {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  Matrix plus(2);
  plus(0, 0) = 0.5 * (1.0 + nz);
  plus(1, 1) = 0.5 * (1.0 - nz);
  plus(0, 1) = 0.5 * complex_t(nx, -ny);
  plus(1, 0) = 0.5 * complex_t(nx, ny);
  if (sign >= 0) return plus;
  // The minus projector is I - plus entrywise, so the completeness
  // relation holds exactly, not just to rounding.
  Matrix minus = Matrix::identity(2);
  minus -= plus;
  return minus;
}

double h_theta(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return -xlog2x(0.5 * (1.0 - t)) - xlog2x(0.5 * (1.0 + t));
}

double mutual_information(const Matrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("mutual_information: expected 4x4 state");
  validate_density_matrix(rho);
  return entropy_bits(qubit_marginal(rho, 0)) + entropy_bits(qubit_marginal(rho, 1)) -
         entropy_bits(rho);
}

std::pair<double, MeasurementAxis> classical_correlation_oracle(const Matrix& rho,
                                                                Side measured) {
  if (rho.dim() != 4)
    throw std::invalid_argument("classical_correlation_oracle: expected 4x4 state");
  validate_density_matrix(rho);

  const double s_kept =
      entropy_bits(qubit_marginal(rho, measured == Side::B ? 0 : 1));

  auto objective = [&](double theta, double phi) {
    return conditional_entropy(rho, measured, MeasurementAxis{theta, phi});
  };

  // Coarse deterministic grid; strict improvement keeps the first
  // (lexicographically smallest) axis on ties.
  constexpr int kThetaGrid = 64, kPhiGrid = 128;
  double best = objective(0.0, 0.0);
  MeasurementAxis arg{0.0, 0.0};
  for (int it = 0; it <= kThetaGrid; ++it) {
    const double theta = kPi * it / kThetaGrid;
    for (int ip = 0; ip < kPhiGrid; ++ip) {
      const double phi = 2.0 * kPi * ip / kPhiGrid;
      const double val = objective(theta, phi);
      if (val < best) {
        best = val;
        arg = {theta, phi};
      }
    }
  }

  // Alternating golden-section refinement around the best grid point,
  // until the objective stops improving by 1e-8.
  const double dtheta = kPi / kThetaGrid;
  const double dphi = 2.0 * kPi / kPhiGrid;
  for (int round = 0; round < 200; ++round) {
    const double before = best;
    auto [t_opt, t_val] = golden_min(
        [&](double th) { return objective(th, arg.phi); },
        std::max(0.0, arg.theta - dtheta), std::min(kPi, arg.theta + dtheta));
    if (t_val < best) {
      best = t_val;
      arg.theta = t_opt;
    }
    auto [p_opt, p_val] = golden_min(
        [&](double ph) { return objective(arg.theta, ph); },
        arg.phi - dphi, arg.phi + dphi);
    if (p_val < best) {
      best = p_val;
      arg.phi = p_opt;
    }
    if (before - best < 1e-8) break;
  }
  if (arg.phi < 0.0) arg.phi += 2.0 * kPi;
  if (arg.phi >= 2.0 * kPi) arg.phi -= 2.0 * kPi;

  return {s_kept - best, arg};
}

DiscordBreakdown discord_oracle(const Matrix& rho) {
  const double mutual = mutual_information(rho);
  const auto [classical, axis] = classical_correlation_oracle(rho, Side::B);
  (void)axis;
  DiscordBreakdown out;
  out.mutual_information = mutual;
  out.classical_correlation = classical;
  out.discord = mutual - classical;
  const double cond = entropy_bits(qubit_marginal(rho, 0)) - classical;
  out.s1 = out.s2 = cond;
  return out;
}

DiscordBreakdown discord_xstate(const XState& x) {
  x.validate();
  const double n = x.norm;
  const double u = x.u, w = x.w, v = x.v;
  const double ay = std::abs(x.y);

  const double p0 = (u + w) / n;
  const double p1 = (w + v) / n;
  const double s_marginal = -xlog2x(p0) - xlog2x(p1);

  double lambda_sum = 0.0;  // sum_k lambda_k log2 lambda_k
  for (double lam : {u / n, v / n, (w + ay) / n, (w - ay) / n})
    lambda_sum += xlog2x(std::max(0.0, lam));

  const double theta0 = (u + w) > 0.0 ? std::abs((u - w) / (u + w)) : 0.0;
  const double theta1 = (w + v) > 0.0 ? std::abs((w - v) / (w + v)) : 0.0;
  const double theta2 = std::sqrt((u - v) * (u - v) + 4.0 * ay * ay) / n;

  DiscordBreakdown out;
  out.s1 = p0 * h_theta(theta0) + p1 * h_theta(theta1);
  out.s2 = h_theta(theta2);
  // Ties take S2: no effect on Q, fixed for reproducibility.
  const double cond = (out.s1 < out.s2 - 1e-12) ? out.s1 : out.s2;
  out.discord = s_marginal + lambda_sum + cond;
  out.mutual_information = 2.0 * s_marginal + lambda_sum;
  out.classical_correlation = s_marginal - cond;
  return out;
}

double thermal_discord(const ModelParams& p) {
  return discord_xstate(reduced_pair_state(p)).discord;
}

double concurrence(const Matrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("concurrence: expected 4x4 state");
  validate_density_matrix(rho);

  const Matrix yy = kron(pauli_y(), pauli_y());
  const Matrix spin_flipped = yy * conjugate(rho) * yy;

  // rho * spin_flipped is not Hermitian; its eigenvalues equal those of
  // sqrt(rho) * spin_flipped * sqrt(rho), which is, so the Hermitian
  // solver applies.
  const EigenSystem es = hermitian_eig(rho);
  Matrix sqrt_rho(4);
  for (std::size_t c = 0; c < 4; ++c) {
    const double s = std::sqrt(std::max(0.0, es.values[c]));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        sqrt_rho(i, j) += s * es.vectors(i, c) * std::conj(es.vectors(j, c));
  }
  const EigenSystem mu = hermitian_eig(sqrt_rho * spin_flipped * sqrt_rho);

  double c = 0.0;  // sqrt(mu_1) - sqrt(mu_2) - sqrt(mu_3) - sqrt(mu_4), descending
  for (int k = 3; k >= 0; --k) {
    const double root = std::sqrt(std::max(0.0, mu.values[k]));
    c += (k == 3) ? root : -root;
  }
  return std::max(0.0, c);
}

double concurrence_xstate(const XState& x) {
  x.validate();
  return 2.0 * std::max(0.0, std::abs(x.y) - std::sqrt(std::max(0.0, x.u * x.v))) / x.norm;
}

}  // namespace qcorr
