#include "qcorr/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kDegeneracyWindow = 1e-9;

std::vector<complex_t> basis_ket(int index) {
  std::vector<complex_t> v(8);
  v[index] = 1.0;
  return v;
}

// |q1 q2 q3> with qubit 1 most significant, so e.g. |011> is index 3.
std::vector<complex_t> superposition(int i0, complex_t a0, int i1, complex_t a1,
                                     int i2, complex_t a2) {
  std::vector<complex_t> v(8);
  v[i0] = a0;
  v[i1] = a1;
  v[i2] = a2;
  return v;
}

const std::array<std::vector<complex_t>, 8>& eigenstates() {
  static const std::array<std::vector<complex_t>, 8> states = [] {
    std::array<std::vector<complex_t>, 8> s;
    const complex_t i(0.0, 1.0);
    const double r3 = 1.0 / std::sqrt(3.0);
    const double r12 = 1.0 / (2.0 * std::sqrt(3.0));
    s[0] = basis_ket(0b000);
    s[1] = superposition(0b011, r3, 0b101, r3, 0b110, r3);
    s[2] = superposition(0b001, r3, 0b010, r3, 0b100, r3);
    s[3] = superposition(0b011, (i + kSqrt3) * r12, 0b101, (i - kSqrt3) * r12,
                         0b110, -2.0 * i * r12);
    s[4] = superposition(0b011, (i - kSqrt3) * r12, 0b101, (i + kSqrt3) * r12,
                         0b110, -2.0 * i * r12);
    s[5] = superposition(0b001, (i + kSqrt3) * r12, 0b010, (i - kSqrt3) * r12,
                         0b100, -2.0 * i * r12);
    s[6] = superposition(0b001, (i - kSqrt3) * r12, 0b010, (i + kSqrt3) * r12,
                         0b100, -2.0 * i * r12);
    s[7] = basis_ket(0b111);
    return s;
  }();
  return states;
}

Matrix site_operator(int site, const Matrix& op) {
  const Matrix& id = identity2();
  Matrix out = (site == 1) ? op : id;
  out = kron(out, site == 2 ? op : id);
  return kron(out, site == 3 ? op : id);
}

}  // namespace

Matrix XState::densify() const {
  Matrix rho(4);
  rho(0, 0) = u / norm;
  rho(1, 1) = w / norm;
  rho(2, 2) = w / norm;
  rho(3, 3) = v / norm;
  rho(1, 2) = y / norm;
  rho(2, 1) = std::conj(y) / norm;
  return rho;
}

XState XState::from_matrix(const Matrix& rho, double tol) {
  if (rho.dim() != 4) throw std::invalid_argument("XState::from_matrix: expected 4x4");
  double off = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j && !((i == 1 && j == 2) || (i == 2 && j == 1)))
        off = std::max(off, std::abs(rho(i, j)));
  if (off > tol)
    throw std::invalid_argument("XState::from_matrix: off-X entries exceed tolerance");
  if (std::abs(rho(1, 1) - rho(2, 2)) > tol)
    throw std::invalid_argument("XState::from_matrix: unequal middle diagonal entries");

  XState x;
  x.u = rho(0, 0).real();
  x.w = 0.5 * (rho(1, 1).real() + rho(2, 2).real());
  x.v = rho(3, 3).real();
  x.y = rho(1, 2);
  x.norm = 1.0;
  return x;
}

void XState::validate() const {
  if (!(norm > 0.0)) throw std::invalid_argument("XState: norm must be positive");
  if (u < -1e-12 || w < -1e-12 || v < -1e-12)
    throw std::invalid_argument("XState: negative diagonal element");
  if (std::abs(y) > w + 1e-12 * std::max(1.0, norm))
    throw std::invalid_argument("XState: |y| exceeds w (inner block not positive)");
  if (std::abs((u + 2.0 * w + v) / norm - 1.0) > 1e-12)
    throw std::invalid_argument("XState: trace differs from 1");
}

Matrix build_hamiltonian(const ModelParams& p) {
  Matrix h(8);
  for (int n = 1; n <= 3; ++n) {
    const int m = n % 3 + 1;  // periodic closure: site 4 == site 1
    h += 0.5 * p.j *
         (site_operator(n, pauli_x()) * site_operator(m, pauli_x()) +
          site_operator(n, pauli_y()) * site_operator(m, pauli_y()) +
          p.delta * (site_operator(n, pauli_z()) * site_operator(m, pauli_z())) +
          p.dm * (site_operator(n, pauli_x()) * site_operator(m, pauli_y()) -
                  site_operator(n, pauli_y()) * site_operator(m, pauli_x())));
    h += p.field * site_operator(n, pauli_z());
  }
  return h;
}

Spectrum analytic_spectrum(const ModelParams& p) {
  const double j = p.j, d = p.delta, dm = p.dm, b = p.field;
  Spectrum s;
  s.energies = {
      1.5 * j * d + 3.0 * b,
      2.0 * j - 0.5 * j * d - b,
      2.0 * j - 0.5 * j * d + b,
      -b - j - 0.5 * j * d - kSqrt3 * j * dm,
      -b - j - 0.5 * j * d + kSqrt3 * j * dm,
      b - j - 0.5 * j * d - kSqrt3 * j * dm,
      b - j - 0.5 * j * d + kSqrt3 * j * dm,
      1.5 * j * d - 3.0 * b,
  };
  s.states = eigenstates();
  return s;
}

Matrix thermal_state(const ModelParams& p) {
  if (!(p.temp > 0.0)) throw std::invalid_argument("thermal_state: temperature must be > 0");
  const Spectrum s = analytic_spectrum(p);
  const double emin = *std::min_element(s.energies.begin(), s.energies.end());
  std::array<double, 8> weight;
  double z = 0.0;
  for (int i = 0; i < 8; ++i) {
    weight[i] = std::exp(-(s.energies[i] - emin) / p.temp);
    z += weight[i];
  }
  Matrix rho(8);
  for (int i = 0; i < 8; ++i) rho += (weight[i] / z) * outer(s.states[i], s.states[i]);
  return rho;
}

XState reduced_pair_state(const ModelParams& p) {
  if (!(p.temp > 0.0))
    throw std::invalid_argument("reduced_pair_state: temperature must be > 0");
  const double beta = 1.0 / p.temp;
  const double j = p.j, d = p.delta, dm = p.dm, b = p.field;

  const double core =
      std::exp(-2.0 * beta * j) + 2.0 * std::cosh(kSqrt3 * beta * j * dm) * std::exp(beta * j);
  const double pair = 2.0 * std::cosh(beta * b) * std::exp(2.0 * beta * j * d);

  XState x;
  x.u = 3.0 * std::exp(-3.0 * beta * b) + std::exp(beta * (2.0 * j * d - b)) * core;
  x.v = 3.0 * std::exp(3.0 * beta * b) + std::exp(beta * (2.0 * j * d + b)) * core;
  x.w = pair * core;
  x.y = pair * complex_t(std::exp(-2.0 * beta * j) -
                             std::cosh(kSqrt3 * beta * j * dm) * std::exp(beta * j),
                         -kSqrt3 * std::sinh(kSqrt3 * beta * j * dm) * std::exp(beta * j));
  x.norm = 6.0 * (std::cosh(3.0 * beta * b) + std::cosh(beta * b) *
                                                  std::exp(2.0 * beta * j * d) * core);
  return x;
}

Matrix ground_state_mixture(const ModelParams& p) {
  const Spectrum s = analytic_spectrum(p);
  const std::vector<int> ground = ground_level_set(p);
  Matrix rho(8);
  for (int i : ground) rho += (1.0 / ground.size()) * outer(s.states[i], s.states[i]);
  return rho;
}

std::vector<int> ground_level_set(const ModelParams& p) {
  const Spectrum s = analytic_spectrum(p);
  const double emin = *std::min_element(s.energies.begin(), s.energies.end());
  std::vector<int> out;
  for (int i = 0; i < 8; ++i)
    if (s.energies[i] <= emin + kDegeneracyWindow) out.push_back(i);
  return out;
}

ModelParams with_knob(ModelParams p, Knob knob, double value) {
  switch (knob) {
    case Knob::D: p.dm = value; break;
    case Knob::Delta: p.delta = value; break;
    case Knob::B: p.field = value; break;
  }
  return p;
}

std::vector<double> find_crossing(ModelParams p, Knob knob, double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("find_crossing: range must be finite with lo < hi");

  auto identity_at = [&](double x) { return ground_level_set(with_knob(p, knob, x)); };

  // The analytic energies are linear in every knob, so ground-set changes
  // are isolated points; a dense scan brackets them and bisection refines.
  constexpr int kScanPoints = 2048;
  constexpr double kTol = 1e-8;
  std::vector<double> crossings;
  std::vector<int> left_id = identity_at(lo);
  double left_x = lo;
  for (int k = 1; k <= kScanPoints; ++k) {
    const double x = lo + (hi - lo) * k / kScanPoints;
    const std::vector<int> id = identity_at(x);
    if (id != left_id) {
      double a = left_x, b = x;
      while (b - a > kTol) {
        const double m = 0.5 * (a + b);
        if (identity_at(m) == left_id)
          a = m;
        else
          b = m;
      }
      const double c = 0.5 * (a + b);
      if (crossings.empty() || c - crossings.back() > 1e-6) crossings.push_back(c);
      left_id = identity_at(x);
    }
    left_x = x;
  }
  return crossings;
}

}  // namespace qcorr
