#ifndef QCORR_CHANNELS_HPP
#define QCORR_CHANNELS_HPP

#include <string>
#include <vector>

#include "qcorr/matrix.hpp"
#include "qcorr/model.hpp"

namespace qcorr {

enum class ChannelKind { Dephasing, Depolarizing };

std::string to_string(ChannelKind kind);

// A single-qubit Kraus channel: operators satisfying
// sum_a E_a^dag E_a = I, acting as identity at gamma = 0.
struct KrausChannel {
  ChannelKind kind;
  double gamma;
  std::vector<Matrix> operators;

  // Action on a single-qubit state.
  Matrix apply(const Matrix& rho) const;
};

// Conversion between physical time and channel strength,
// gamma = 1 - exp(-chi t).
struct DecayClock {
  double chi;  // decay rate, > 0

  double gamma(double t) const;
};

// E0 = diag(1, sqrt(1-g)), E1 = diag(0, sqrt(g)). Rejects gamma outside [0,1].
KrausChannel dephasing(double gamma);

// sqrt(1-3g/4) I plus sqrt(g/4) sigma_{x,y,z}. Rejects gamma outside [0,1].
KrausChannel depolarizing(double gamma);

// Independent action on all three qubits:
// sum (Ea x Eb x Ec) rho (Ea x Eb x Ec)^dag.
Matrix apply_independent(const KrausChannel& channel, const Matrix& rho);

// Closed form for the dephased reduced pair: same u, w, v with the inner
// coherence scaled to (1-gamma) y. Valid for any field value.
XState dephased_pair_state(const ModelParams& p, double gamma);

// Reduced pair state after depolarizing all three qubits, computed through
// the full Kraus evolution; the result is checked to remain X-form
// (off-X entries <= 1e-12) before extraction.
XState depolarized_pair_state(const ModelParams& p, double gamma);

// Printed closed form of the dephased discord (requires field = 0, which
// makes u = v); cross-validated elsewhere against discord_xstate on
// dephased_pair_state.
double dephased_discord(const ModelParams& p, double gamma);

// max{0, (1-gamma)|y| - sqrt(u v)} * 2/norm at field = 0.
double dephased_concurrence(const ModelParams& p, double gamma);

// Fully numerical route: depolarize, reduce, then discord (bits) and
// concurrence of the pair.
std::pair<double, double> depolarized_pair_discord(const ModelParams& p, double gamma);

}  // namespace qcorr

#endif
