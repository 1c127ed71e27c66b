#include <doctest.h>

#include <cmath>
#include <random>

#include "qcorr/channels.hpp"
#include "qcorr/correlations.hpp"
#include "test_util.hpp"

using namespace qcorr;
using namespace qcorr::test;

namespace {

Matrix plus_state() {
  Matrix rho(2);
  rho(0, 0) = rho(0, 1) = rho(1, 0) = rho(1, 1) = 0.5;
  return rho;
}

Matrix completeness_sum(const KrausChannel& ch) {
  Matrix acc(2);
  for (const Matrix& e : ch.operators) acc += adjoint(e) * e;
  return acc;
}

ModelParams random_zero_field_params(std::mt19937_64& rng) {
  ModelParams p;
  p.j = rng() % 2 ? 1.0 : -1.0;
  p.delta = uniform(rng, -2.0, 2.0);
  p.dm = uniform(rng, -2.5, 2.5);
  p.field = 0.0;
  p.temp = uniform(rng, 0.3, 2.0);
  return p;
}

}  // namespace

TEST_CASE("dephasing channel on a single qubit") {
  std::mt19937_64 rng(41);
  const Matrix rho = random_density(rng, 2);

  CHECK(max_abs_diff(dephasing(0.0).apply(rho), rho) < 1e-15);

  Matrix fully_dephased(2);
  fully_dephased(0, 0) = fully_dephased(1, 1) = 0.5;
  CHECK(max_abs_diff(dephasing(1.0).apply(plus_state()), fully_dephased) < 1e-12);

  const Matrix half = dephasing(0.5).apply(plus_state());
  CHECK(std::abs(half(0, 1) - 0.5 * std::sqrt(0.5)) < 1e-15);
  CHECK(half(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(dephasing(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(dephasing(1.1), std::invalid_argument);
}

TEST_CASE("depolarizing channel on a single qubit") {
  std::mt19937_64 rng(42);
  const Matrix rho = random_density(rng, 2);

  CHECK(max_abs_diff(depolarizing(0.0).apply(rho), rho) < 1e-15);

  Matrix zero(2);
  zero(0, 0) = 1.0;
  CHECK(max_abs_diff(depolarizing(1.0).apply(zero), 0.5 * Matrix::identity(2)) < 1e-15);

  const Matrix partial = depolarizing(0.4).apply(zero);
  CHECK(partial(0, 0).real() == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(partial(1, 1).real() == doctest::Approx(0.2).epsilon(1e-15));

  CHECK_THROWS_AS(depolarizing(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(depolarizing(2.0), std::invalid_argument);
}

TEST_CASE("Kraus completeness across the gamma range") {
  for (int k = 0; k <= 99; ++k) {
    const double gamma = k / 99.0;
    CHECK(max_abs_diff(completeness_sum(dephasing(gamma)), Matrix::identity(2)) < 1e-12);
    CHECK(max_abs_diff(completeness_sum(depolarizing(gamma)), Matrix::identity(2)) < 1e-12);
  }
}

TEST_CASE("decay clock maps time to channel strength") {
  const DecayClock clock{0.5};
  CHECK(clock.gamma(0.0) == 0.0);
  double prev = -1.0;
  for (double t : {0.0, 0.3, 1.0, 4.0, 40.0}) {
    const double g = clock.gamma(t);
    CHECK(g >= prev);
    CHECK(g >= 0.0);
    CHECK(g < 1.0);
    prev = g;
  }
  CHECK_THROWS_AS(DecayClock{-1.0}.gamma(1.0), std::invalid_argument);
  CHECK_THROWS_AS(clock.gamma(-2.0), std::invalid_argument);
}

TEST_CASE("independent three-qubit application") {
  const ModelParams p{1, 0.8, 1.2, 0.3, 0.7};
  const Matrix rho = thermal_state(p);

  SUBCASE("gamma = 0 leaves the state untouched") {
    CHECK(max_abs_diff(apply_independent(dephasing(0.0), rho), rho) < 1e-14);
    CHECK(max_abs_diff(apply_independent(depolarizing(0.0), rho), rho) < 1e-14);
  }
  SUBCASE("full depolarization reaches the maximally mixed state") {
    CHECK(max_abs_diff(apply_independent(depolarizing(1.0), rho),
                       (1.0 / 8.0) * Matrix::identity(8)) < 1e-12);
  }
  SUBCASE("trace, Hermiticity and positivity are preserved") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 8; ++rep) {
      const Matrix state = random_density(rng, 8);
      const double gamma = uniform(rng, 0.0, 1.0);
      for (const KrausChannel& ch : {dephasing(gamma), depolarizing(gamma)}) {
        const Matrix out = apply_independent(ch, state);
        CHECK(std::abs(trace(out) - complex_t(1.0)) < 1e-12);
        CHECK(is_hermitian(out, 1e-12));
        CHECK(hermitian_eig(out).values.front() >= -1e-10);
      }
    }
  }
  SUBCASE("invalid input is rejected") {
    CHECK_THROWS_AS(apply_independent(dephasing(0.5), Matrix::identity(8)),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_independent(dephasing(0.5), Matrix::identity(4)),
                    std::invalid_argument);
  }
}

TEST_CASE("pair reductions stay equal across sites under independent noise") {
  const ModelParams p{-1, 1.1, 0.9, 0.4, 0.8};
  const Matrix rho = thermal_state(p);
  for (const KrausChannel& ch : {dephasing(0.37), depolarizing(0.37)}) {
    const Matrix evolved = apply_independent(ch, rho);
    const Matrix r12 = partial_trace(evolved, {1, 2});
    CHECK(max_abs_diff(r12, partial_trace(evolved, {2, 3})) < 1e-12);
    CHECK(max_abs_diff(r12, partial_trace(evolved, {3, 1})) < 1e-12);
  }
}

TEST_CASE("dephased pair state") {
  const ModelParams p{1, 0.5, 1.0, 0.0, 0.5};

  SUBCASE("gamma = 0 reproduces the thermal reduction") {
    const XState a = dephased_pair_state(p, 0.0);
    const XState b = reduced_pair_state(p);
    CHECK(std::abs(a.y - b.y) == 0.0);
    CHECK(a.u == b.u);
  }
  SUBCASE("gamma = 1 removes the coherence and the discord") {
    const XState x = dephased_pair_state(p, 1.0);
    CHECK(std::abs(x.y) == 0.0);
    CHECK(std::abs(discord_xstate(x).discord) < 1e-12);
  }
  SUBCASE("gamma = 1/2 halves the coherence exactly") {
    CHECK(std::abs(dephased_pair_state(p, 0.5).y) ==
          doctest::Approx(0.5 * std::abs(reduced_pair_state(p).y)).epsilon(1e-15));
  }
  SUBCASE("closed form matches the evolved reduction, field included") {
    std::mt19937_64 rng(44);
    for (int rep = 0; rep < 6; ++rep) {
      ModelParams q = random_zero_field_params(rng);
      if (rep % 2) q.field = uniform(rng, -1.0, 1.0);
      const Matrix rho = thermal_state(q);
      for (double gamma : {0.13, 0.5, 0.86}) {
        const Matrix evolved = partial_trace(apply_independent(dephasing(gamma), rho), {1, 2});
        CHECK(max_abs_diff(dephased_pair_state(q, gamma).densify(), evolved) < 1e-10);
      }
    }
  }
}

TEST_CASE("printed dephased-discord formula") {
  const ModelParams p{-1, 1.0, 3.0, 0.0, 0.5};

  SUBCASE("endpoints") {
    CHECK(std::abs(dephased_discord(p, 1.0)) < 1e-12);
    CHECK(dephased_discord(p, 0.0) == doctest::Approx(thermal_discord(p)).epsilon(1e-12));
  }
  SUBCASE("agrees with the general X-state closed form") {
    std::mt19937_64 rng(45);
    for (int rep = 0; rep < 10; ++rep) {
      const ModelParams q = random_zero_field_params(rng);
      for (double gamma : {0.0, 0.2, 0.5, 0.8, 0.997, 1.0}) {
        CHECK(std::abs(dephased_discord(q, gamma) -
                       discord_xstate(dephased_pair_state(q, gamma)).discord) < 1e-10);
      }
    }
  }
  SUBCASE("nonzero field is rejected") {
    ModelParams q = p;
    q.field = 0.2;
    CHECK_THROWS_AS(dephased_discord(q, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(dephased_concurrence(q, 0.5), std::invalid_argument);
  }
  SUBCASE("the D = 3 curve has a slope discontinuity inside (0, 1)") {
    const XState x = reduced_pair_state(p);
    const double kink = 1.0 - std::abs(x.u - x.w) / std::abs(x.y);
    REQUIRE(kink > 0.0);
    REQUIRE(kink < 1.0);
    const double eps = 0.02;
    const double slope_left =
        (dephased_discord(p, kink - eps) - dephased_discord(p, kink - 2 * eps)) / eps;
    const double slope_right =
        (dephased_discord(p, kink + 2 * eps) - dephased_discord(p, kink + eps)) / eps;
    CHECK(std::abs(slope_left - slope_right) > 0.05);
  }
}

TEST_CASE("dephased concurrence and sudden death") {
  const ModelParams p{1, 0.5, 1.0, 0.0, 0.5};
  const XState x = reduced_pair_state(p);

  SUBCASE("gamma = 0 is the static thermal concurrence") {
    CHECK(dephased_concurrence(p, 0.0) ==
          doctest::Approx(concurrence_xstate(x)).epsilon(1e-14));
  }
  SUBCASE("the analytic threshold matches the first zero on a 1e-3 grid") {
    const double gamma_star = 1.0 - std::sqrt(x.u * x.v) / std::abs(x.y);
    REQUIRE(concurrence_xstate(x) > 0.0);
    REQUIRE(gamma_star < 1.0);
    int first_zero = -1;
    for (int k = 0; k <= 1000; ++k) {
      if (dephased_concurrence(p, k / 1000.0) == 0.0) {
        first_zero = k;
        break;
      }
    }
    REQUIRE(first_zero >= 0);
    CHECK(first_zero / 1000.0 >= gamma_star - 1e-12);
    CHECK(first_zero / 1000.0 - gamma_star <= 1e-3);
  }
  SUBCASE("zero-entanglement region still carries discord") {
    const ModelParams q{1, 1.0, 0.0, 0.0, 0.3};
    CHECK(dephased_concurrence(q, 0.0) == 0.0);
    CHECK(thermal_discord(q) > 0.05);
  }
}

TEST_CASE("concurrence dies at finite gamma while discord survives the grid") {
  std::mt19937_64 rng(46);
  int tested = 0;
  while (tested < 5) {
    const ModelParams p = random_zero_field_params(rng);
    const XState x = reduced_pair_state(p);
    if (concurrence_xstate(x) < 0.01) continue;
    ++tested;
    int first_zero = -1;
    for (int k = 0; k <= 1000; ++k) {
      if (dephased_concurrence(p, k / 1000.0) == 0.0) {
        first_zero = k;
        break;
      }
    }
    REQUIRE(first_zero >= 0);
    CHECK(first_zero < 1000);  // strictly before gamma = 1
    for (int k : {1, 250, 500, 750, 999})
      CHECK(dephased_discord(p, k / 1000.0) > 0.0);
  }
}

TEST_CASE("coherence decays monotonically under both channels") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 3; ++rep) {
    ModelParams p = random_zero_field_params(rng);
    p.field = uniform(rng, -0.5, 0.5);
    double prev_deph = std::abs(reduced_pair_state(p).y) / reduced_pair_state(p).norm;
    double prev_depol = prev_deph;
    for (int k = 1; k <= 20; ++k) {
      const double gamma = k / 20.0;
      const XState a = dephased_pair_state(p, gamma);
      const double ya = std::abs(a.y) / a.norm;
      CHECK(ya <= prev_deph + 1e-12);
      prev_deph = ya;
      const XState b = depolarized_pair_state(p, gamma);
      const double yb = std::abs(b.y) / b.norm;
      CHECK(yb <= prev_depol + 1e-12);
      prev_depol = yb;
    }
  }
}

TEST_CASE("depolarized pair quantities") {
  const ModelParams p{1, 1.0, 3.0, 0.0, 0.5};

  SUBCASE("gamma = 1 erases both discord and concurrence") {
    const auto [q, c] = depolarized_pair_discord(p, 1.0);
    CHECK(std::abs(q) < 1e-12);
    CHECK(c == 0.0);
  }
  SUBCASE("gamma = 0 reproduces the static thermal values") {
    const auto [q, c] = depolarized_pair_discord(p, 0.0);
    const XState x = reduced_pair_state(p);
    CHECK(std::abs(q - discord_xstate(x).discord) < 1e-12);
    CHECK(std::abs(c - concurrence_xstate(x)) < 1e-12);
  }
  SUBCASE("depolarizing noise removes discord faster than dephasing") {
    const double dephased = discord_xstate(dephased_pair_state(p, 0.5)).discord;
    const auto [depolarized, c] = depolarized_pair_discord(p, 0.5);
    (void)c;
    CHECK(dephased - depolarized > 0.05);
  }
}
