#ifndef QCORR_MODEL_HPP
#define QCORR_MODEL_HPP

#include <array>
#include <vector>

#include "qcorr/matrix.hpp"

namespace qcorr {

// Physical knobs of the three-qubit XXZ ring with z-axis DM coupling.
// Energies are in units of |J| with k_B = 1; any real values are accepted,
// the ferromagnetic/antiferromagnetic conventions being J = -1 / J = +1.
struct ModelParams {
  double j = 1.0;      // exchange coupling
  double delta = 0.0;  // z-anisotropy
  double dm = 0.0;     // DM interaction strength
  double field = 0.0;  // magnetic field along z
  double temp = 1.0;   // temperature, must be > 0 for thermal states
};

// The eight closed-form energies E_0..E_7 and the fixed eigenvectors
// |phi_0>..|phi_7>. Only the energies depend on the parameters.
struct Spectrum {
  std::array<double, 8> energies;
  std::array<std::vector<complex_t>, 8> states;
};

// Reduced two-qubit state of the thermal ring in X form: raw elements
// (u, w, y, v) plus the normalizer (the 6Z' of the closed form), so that
// the density matrix is diag(u, w, w, v)/norm with inner coherence y/norm.
struct XState {
  double u = 0.0;
  double w = 0.0;
  double v = 0.0;
  complex_t y;
  double norm = 1.0;

  // Dense 4x4 density matrix in the |00>,|01>,|10>,|11> basis.
  Matrix densify() const;

  // Extract from a dense matrix; throws unless the matrix is X-form with
  // equal middle diagonals within `tol`.
  static XState from_matrix(const Matrix& rho, double tol = 1e-12);

  // Checks u,w,v >= 0, |y| <= w and unit trace; throws on violation.
  void validate() const;
};

// Knobs that sweep/crossing searches can vary.
enum class Knob { D, Delta, B };

Matrix build_hamiltonian(const ModelParams& p);

Spectrum analytic_spectrum(const ModelParams& p);

// Gibbs state at p.temp (> 0 required). Weights are computed from
// E_i - min(E) so that beta*|E| overflow cannot occur.
Matrix thermal_state(const ModelParams& p);

// Closed-form reduced pair state (agrees with partial_trace of the
// thermal state entrywise).
XState reduced_pair_state(const ModelParams& p);

// Equal-weight mixture of all analytic eigenstates within 1e-9 of the
// minimum energy; p.temp is ignored.
Matrix ground_state_mixture(const ModelParams& p);

// Indices of the analytic levels within 1e-9 of the minimum energy.
std::vector<int> ground_level_set(const ModelParams& p);

// Locate every value of `knob` inside [lo, hi] where the identity of the
// ground level set changes, each to 1e-8, by bisection on the analytic
// energies. Returns an empty list when there is no crossing.
std::vector<double> find_crossing(ModelParams p, Knob knob, double lo, double hi);

// p with the given knob replaced.
ModelParams with_knob(ModelParams p, Knob knob, double value);

}  // namespace qcorr

#endif
