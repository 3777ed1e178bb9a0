#include <cmath>
#include <vector>

#include "doctest.h"
#include "qes/cdsi.hpp"
#include "qes/superpotential.hpp"

using namespace qes;
using Q = Rational;

namespace {

Q q(long long n, long long d = 1) { return Q(n) / Q(d); }

std::vector<double> log_points(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return out;
}

std::vector<double> domain_points(double lambda, int n = 1000) {
  return lambda > 0 ? log_points(1e-3, 4.0 / std::sqrt(lambda), n)
                    : log_points(1e-3, (1 - 1e-6) / std::sqrt(-lambda), n);
}

}  // namespace

TEST_CASE("basis validation") {
  Superpotential w(1.0);
  CHECK_THROWS_AS(w.add(1.0, 2, 1), Error);
  CHECK_THROWS_AS(w.add(1.0, 1, 2), Error);
  CHECK_NOTHROW(w.add(1.0, -1, -3));
}

TEST_CASE("canonical form is unique") {
  // r^-1 f^3 = r^-1 f + lambda r f ; r^-1 f^-1 = r^-1 f - lambda r f^-1
  BasicSuperpotential<Q> a(q(2)), b(q(2));
  a.add(q(1), -1, 3);
  b.add(q(1), -1, 1).add(q(2), 1, 1);
  CHECK(a.same_as(b));
  BasicSuperpotential<Q> c(q(2)), d(q(2));
  c.add(q(1), -1, -1);
  d.add(q(1), -1, 1).add(q(-2), 1, -1);
  CHECK(c.same_as(d));
  // pointwise agreement of equivalent forms
  const Superpotential ad = to_double(a), bd = to_double(b);
  const Deformation def(2.0);
  for (double r : {0.1, 0.5, 3.0}) {
    const RadialPoint p = point_from_radius(def, r);
    CHECK(evaluate(ad, p).value == doctest::Approx(evaluate(bd, p).value).epsilon(1e-14));
    CHECK(evaluate(ad, p).derivative ==
          doctest::Approx(evaluate(bd, p).derivative).epsilon(1e-13));
  }
}

TEST_CASE("analytic derivative against finite differences") {
  Superpotential w(-0.7);
  w.add(-2.0, -1, 1).add(0.3, 1, -1).add(1.1, 1, -3).add(-0.4, 1, -5).add(0.2, -1, 3);
  const Deformation def(-0.7);
  for (double r : {0.05, 0.3, 0.8, 1.1}) {
    const double h = 1e-6;
    const double fd = (evaluate(w, point_from_radius(def, r + h)).value -
                       evaluate(w, point_from_radius(def, r - h)).value) /
                      (2 * h);
    const double an = evaluate(w, point_from_radius(def, r)).derivative;
    CHECK(std::fabs(fd - an) <= 1e-6 * (1 + std::fabs(an)));
  }
}

TEST_CASE("zero superpotential") {
  const Superpotential w(1.0);
  for (double r : {0.1, 1.0, 5.0}) {
    CHECK(riccati_apply(w, RiccatiSign::Minus, r) == 0.0);
    CHECK(riccati_apply(w, RiccatiSign::Plus, r) == 0.0);
  }
}

TEST_CASE("base oscillator superpotential at r = 1") {
  const OscillatorSpec osc{2.0, 1.0, 0.0};
  const Superpotential w = oscillator_superpotential(osc);
  const RadialPoint p = point_from_radius(Deformation(1.0), 1.0);
  const SuperValue v = evaluate(w, p);
  CHECK(std::fabs(v.value) < 1e-15);
  CHECK(p.f * v.derivative == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(riccati_apply(w, RiccatiSign::Minus, 1.0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(riccati_apply(w, RiccatiSign::Plus, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  // V_1 = W^2 - f W' + E_0 is the oscillator itself, E_0 = beta(2L+3) - lambda(L+1)^2 = 5
  CHECK(osc.ground_energy() == 5.0);
  CHECK(riccati_apply(w, RiccatiSign::Minus, 1.0) + 5.0 ==
        doctest::Approx(eval_potential(to_spec(osc), 1.0)).epsilon(1e-14));
}

TEST_CASE("family 1, m = 1 factorization at sample points") {
  const auto sol = general_two_state(Family::First, 1, 1.0, 1.0, 1.0);
  CHECK(sol.E0 == -15.5);
  for (double r : {0.5, 1.0, 2.0}) {
    const double lhs = riccati_apply(sol.W, RiccatiSign::Minus, r) + sol.E0;
    CHECK(std::fabs(lhs - eval_potential(sol.spec, r)) <= 1e-12 * (1 + std::fabs(lhs)));
  }
}

TEST_CASE("exact Riccati identities for both families") {
  for (Family fam : {Family::First, Family::Second}) {
    for (int m = 1; m <= 6; ++m) {
      for (const Q& L : {q(0), q(1), q(5, 2)}) {
        for (const Q& B : {q(1), q(9, 4), q(16)}) {
          const Q lambda = fam == Family::First ? q(1, 3) : q(-2);
          const auto sol = general_two_state<Q>(fam, m, L, B, lambda);
          auto v1 = riccati_expand(sol.W, RiccatiSign::Minus);
          v1.add_constant(sol.E0);
          CHECK((v1 - expand(sol.spec)).is_zero());

          const auto partner = partner_shift(sol.spec);
          auto v2 = riccati_expand(sol.W, RiccatiSign::Plus);
          v2.add_constant(-partner.R);
          CHECK((v2 - expand(partner.spec)).is_zero());

          // the partner is factorized by W' with ground energy E_1
          auto v3 = riccati_expand(sol.W_partner, RiccatiSign::Minus);
          v3.add_constant(sol.E1 - sol.E0 - partner.R);
          CHECK((v3 - expand(partner.spec)).is_zero());

          CHECK(generating_identity_residual(sol.pair).is_zero());
        }
      }
    }
  }
}

TEST_CASE("pointwise Riccati consistency, m = 1..4") {
  for (Family fam : {Family::First, Family::Second}) {
    for (int m = 1; m <= 4; ++m) {
      for (double L : {0.0, 1.0, 2.5}) {
        for (double B : {1.0, 4.0}) {
          const double lambda = fam == Family::First ? 1.0 : -1.0;
          const auto sol = general_two_state(fam, m, L, B, lambda);
          const auto partner = partner_shift(sol.spec);
          PotentialSpec shifted = partner.spec;
          shifted.shift = partner.R;
          const Deformation def(lambda);
          double worst1 = 0, worst2 = 0, worst3 = 0;
          for (double r : domain_points(lambda)) {
            const RadialPoint p = point_from_radius(def, r);
            const double v = eval_potential(sol.spec, p);
            const double r1 = riccati_apply(sol.W, RiccatiSign::Minus, p) + sol.E0;
            worst1 = std::max(worst1, std::fabs(r1 - v) / (1 + std::fabs(v)));
            const double v2 = eval_potential(shifted, p);
            const double r2 = riccati_apply(sol.W, RiccatiSign::Plus, p);
            worst2 = std::max(worst2, std::fabs(r2 - v2) / (1 + std::fabs(v2)));
            const double g = generating_identity_residual(sol.pair, p);
            worst3 = std::max(worst3, std::fabs(g));
          }
          CHECK(worst1 <= 1e-10);
          CHECK(worst2 <= 1e-10);
          CHECK(worst3 <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("W_- recovered from W_+") {
  const auto s1 = general_two_state(Family::First, 1, 1.0, 1.0, 1.0);
  CHECK(s1.delta_e == doctest::Approx(14.0));
  for (double r : {0.3, 0.9, 1.7}) {
    const double f = std::sqrt(1 + r * r);
    const double expect = (r / f) * (-1 / (r * r) + 2.0);
    CHECK(std::fabs(w_minus_from_w_plus(s1.pair.w_plus, s1.delta_e, r) - expect) <= 1e-12);
  }
  try {
    w_minus_from_w_plus(s1.pair.w_plus, s1.delta_e, s1.r0);
    FAIL("no pole reported at the node");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleAtNode);
  }

  const auto s2 = general_two_state(Family::Second, 1, 1.0, 1.0, -1.0);
  CHECK(s2.delta_e == doctest::Approx(4.0 * 7.0));
  for (double r : {0.2, 0.5, 0.9}) {
    const double f = std::sqrt(1 - r * r);
    const double expect = (r / f) * (-1 / (r * r) + 4.0);
    const double got = w_minus_from_w_plus(s2.pair.w_plus, s2.delta_e, r);
    CHECK(std::fabs(got - expect) <= 1e-12 * (1 + std::fabs(expect)));
  }
  CHECK_THROWS_AS(w_minus_from_w_plus(s2.pair.w_plus, s2.delta_e, s2.r0), Error);
}
