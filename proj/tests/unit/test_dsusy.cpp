#include <cmath>

#include "doctest.h"
#include "qes/cdsi.hpp"
#include "qes/dsusy.hpp"
#include "qes/oracle.hpp"

using namespace qes;
using Q = Rational;

namespace {
Q q(long long n, long long d = 1) { return Q(n) / Q(d); }
}  // namespace

TEST_CASE("ground states from superpotentials") {
  SUBCASE("empty superpotential") {
    const auto psi = wavefunction_from_superpotential(BasicSuperpotential<Q>(q(1)));
    CHECK(psi.r_power == 0);
    CHECK(psi.f_power == q(-1, 2));
    CHECK(psi.exp_r2.empty());
    CHECK(psi.exp_finv.empty());
  }
  SUBCASE("family 1, m = 1: r^{L+1} f exp(-lambda sqrt(B) r^2 / 2)") {
    const auto sol = general_two_state<Q>(Family::First, 1, q(2), q(9), q(1, 2));
    const auto psi = wavefunction_from_superpotential(sol.W);
    CHECK(psi.r_power == 3);
    CHECK(psi.f_power == 1);
    REQUIRE(psi.exp_r2.size() == 1);
    CHECK(psi.exp_r2[0] == q(-3, 2));  // coefficient of lambda r^2
    CHECK(psi.exp_finv.empty());
  }
  SUBCASE("family 2, m = 1: r^{L+1} f^{sqrt(B)-2} exp(-sqrt(B) / (2 f^2))") {
    const auto sol = general_two_state<Q>(Family::Second, 1, q(1), q(4), q(-1));
    const auto psi = wavefunction_from_superpotential(sol.W);
    CHECK(psi.r_power == 2);
    CHECK(psi.f_power == 0);
    CHECK(psi.exp_r2.empty());
    REQUIRE(psi.exp_finv.size() == 1);
    CHECK(psi.exp_finv[0] == q(-1));
  }
  SUBCASE("unsupported terms are rejected") {
    BasicSuperpotential<Q> w(q(1));
    CHECK_THROWS_AS(w.add(q(1), 3, 1), Error);
  }
}

TEST_CASE("generated states match the printed closed forms, m = 1..6") {
  for (Family fam : {Family::First, Family::Second}) {
    for (int m = 1; m <= 6; ++m) {
      for (const Q& L : {q(0), q(3), q(1, 2)}) {
        for (const Q& B : {q(1), q(25, 4)}) {
          const Q lambda = fam == Family::First ? q(2) : q(-1, 4);
          const auto sol = general_two_state<Q>(fam, m, L, B, lambda);
          CHECK(same_form(wavefunction_from_superpotential(sol.W), sol.psi0));
          CHECK(same_form(apply_raising(sol.W, sol.psi0_partner), sol.psi1));
          // annihilation identity read backwards
          CHECK(superpotential_from_wavefunction(sol.psi0).same_as(sol.W));
          CHECK(superpotential_from_wavefunction(sol.psi0_partner).same_as(sol.W_partner));
        }
      }
    }
  }
}

TEST_CASE("excited-state prefactors") {
  const auto s1 = general_two_state<Q>(Family::First, 1, q(1), q(4), q(1));
  CHECK(s1.psi1.prefactor == std::vector<Q>{q(-5), q(4)});
  CHECK(s1.psi1.f_power == -1);
  // -(2L+3) + 4 sqrt(B) s + 2 sqrt(B) s^2
  const auto s2 = general_two_state<Q>(Family::First, 2, q(1), q(9), q(1));
  CHECK(s2.psi1.prefactor == std::vector<Q>{q(-5), q(12), q(6)});
  CHECK(s2.psi1.f_power == -2);
  // proportional to 2L+3 - 2 K s + K s^2
  const auto s3 = general_two_state<Q>(Family::Second, 1, q(1), q(1), q(-1));
  CHECK(s3.psi1.prefactor == std::vector<Q>{q(-5), q(14), q(-7)});
  CHECK(s3.psi1.f_power == q(-1));
  // -(2L+3) + 3 K s - 3 K s^2 + K s^3
  const auto s4 = general_two_state<Q>(Family::Second, 2, q(1), q(1), q(-1));
  CHECK(s4.psi1.prefactor == std::vector<Q>{q(-5), q(21), q(-21), q(7)});
  CHECK(s4.psi1.f_power == q(-2));
}

TEST_CASE("raising operator: operator route against the W_+ route") {
  for (Family fam : {Family::First, Family::Second}) {
    for (int m = 1; m <= 4; ++m) {
      const double lambda = fam == Family::First ? 1.0 : -1.0;
      const auto sol = general_two_state(fam, m, 1.0, 1.0, lambda);
      const Deformation def(lambda);
      const WaveProfile prof = profile(sol.psi1);
      const WaveProfile pprof = profile(sol.psi0_partner);
      const double x_end = fam == Family::First ? arc_coordinate(def, prof.r_end) : def.arc_max();
      // ratios to the closed form must be one constant
      double c = 0;
      double worst = 0;
      for (int i = 0; i < 100; ++i) {
        const RadialPoint p = point_from_arc(def, x_end * (i + 0.5) / 100);
        const WaveSample s = sample(sol.psi0_partner, p, pprof.log_peak);
        const double fprime = lambda * p.r / p.f;
        const double w = evaluate(sol.W, p).value;
        const double op = -p.f * s.d1 - 0.5 * fprime * s.value + w * s.value;
        const double wplus = evaluate(sol.pair.w_plus, p).value * s.value;
        const double closed = sample(sol.psi1, p, prof.log_peak).value;
        worst = std::max(worst, std::fabs(op - wplus));
        if (c == 0 && std::fabs(closed) > 1e-3) c = op / closed;
        if (c != 0) worst = std::max(worst, std::fabs(op / c - closed));
      }
      CHECK(worst <= 1e-10);
    }
  }
}

TEST_CASE("log-derivative identity pointwise") {
  for (Family fam : {Family::First, Family::Second}) {
    for (int m = 1; m <= 4; ++m) {
      const double lambda = fam == Family::First ? 1.0 : -1.0;
      const auto sol = general_two_state(fam, m, 2.0, 4.0, lambda);
      const Deformation def(lambda);
      for (const auto* pair : {&sol.psi0, &sol.psi0_partner}) {
        const auto& w = pair == &sol.psi0 ? sol.W : sol.W_partner;
        for (int i = 1; i < 100; ++i) {
          const double r = (fam == Family::First ? 3.0 : 0.999) * i / 100;
          const RadialPoint p = point_from_radius(def, r);
          const WaveSample s = sample(*pair, p, log_envelope(*pair, p));
          const double lhs = -p.f * s.d1 / s.value - 0.5 * lambda * r / p.f;
          const double rhs = evaluate(w, p).value;
          CHECK(std::fabs(lhs - rhs) <= 1e-10 * (1 + std::fabs(rhs)));
        }
      }
    }
  }
}

TEST_CASE("partner shift") {
  const auto spec = make_qes_spec<Q>(Family::First, 1, q(1), q(1), q(1));
  const auto p = partner_shift(spec);
  CHECK(p.spec.L == 2);
  CHECK(p.spec.A == q(15, 4));
  CHECK(p.spec.B == std::vector<Q>{q(-6), q(1)});
  CHECK(p.R == q(21, 2));
  CHECK(p.spec.shift == 0);

  for (int m = 1; m <= 5; ++m) {
    const auto s1 = make_qes_spec<Q>(Family::First, m, q(2), q(4), q(1));
    CHECK(partner_shift(s1).spec.A == (Q(m) + q(3, 2)) * (Q(m) + q(1, 2)));
    const auto s2 = make_qes_spec<Q>(Family::Second, m, q(2), q(4), q(-1));
    const auto p2 = partner_shift(s2);
    for (int k = m; k <= 2 * m; ++k) CHECK(p2.spec.B[k - 1] == 4);
  }

  auto broken = spec;
  broken.B[0] += 1;
  try {
    partner_shift(broken);
    FAIL("unconstrained spec accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotConstrained);
  }
  CHECK_THROWS_AS(partner_shift(oscillator_from_beta<Q>(q(1), q(1))), Error);
}

TEST_CASE("base oscillator shape invariance") {
  for (const Q& beta : {q(2), q(7, 2), q(-3)}) {
    for (const Q& lambda : {q(1), q(-1), q(1, 2)}) {
      for (const Q& L : {q(0), q(1), q(5, 2)}) {
        const BasicOscillatorSpec<Q> osc{beta, lambda, L};
        const auto w = oscillator_superpotential(osc);
        auto v1 = riccati_expand(w, RiccatiSign::Minus);
        v1.add_constant(osc.ground_energy());
        CHECK((v1 - expand(to_spec(osc))).is_zero());
        // W^2 + f W' + E_0 = V[beta - lambda, L + 1] + 2 beta
        auto v2 = riccati_expand(w, RiccatiSign::Plus);
        v2.add_constant(osc.ground_energy() - 2 * beta);
        CHECK((v2 - expand(to_spec(osc.shifted()))).is_zero());
        const auto p = oscillator_partner(osc);
        CHECK(p.R == 2 * beta - osc.ground_energy());
      }
    }
  }
}

TEST_CASE("quadrature norm and normalizability") {
  const auto sol = general_two_state(Family::First, 1, 1.0, 1.0, 1.0);
  const double n = quadrature_norm(sol.psi0);
  CHECK(n > 0);
  CHECK(std::isfinite(n));
  WavefunctionForm bad;
  bad.lambda = 1.0;
  bad.f_power = -0.5;
  try {
    quadrature_norm(bad);
    FAIL("f^{-1/2} accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonNormalizable);
  }
  const auto sol2 = general_two_state(Family::Second, 1, 1.0, 1.0, -1.0);
  const Deformation def(-1.0);
  double prev = 1.0;
  for (double r : {0.99, 0.999, 0.9999}) {
    const double v = std::fabs(evaluate(sol2.psi0, r));
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-100);
  CHECK(std::isfinite(quadrature_norm(sol2.psi0)));
}
