#pragma once

// Conditional deformed shape invariance. The m = 1, 2 step systems are the
// closed-form solutions of the Riccati matching conditions together with
// the residuals of the conditions that remain (constraints on A, and on B_1
// for m = 2). General m goes through the generating pair W_+, W_-.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qes/dsusy.hpp"
#include "qes/expansion.hpp"
#include "qes/potential.hpp"
#include "qes/superpotential.hpp"
#include "qes/wavefunction.hpp"

namespace qes {

/// W = xi f/r + eta r/f + zeta r f + sigma r f^3        (family 1)
/// W = xi f/r + eta r/f + zeta r/f^3 + sigma r/f^5      (family 2)
template <class T>
struct Ansatz {
  T xi{0};
  T eta{0};
  T zeta{0};
  std::optional<T> sigma;

  BasicSuperpotential<T> superpotential(Family family, const T& lambda) const {
    BasicSuperpotential<T> w(lambda);
    w.add(xi, -1, 1);
    w.add(eta, 1, -1);
    const bool first = family == Family::First;
    w.add(zeta, 1, first ? 1 : -3);
    if (sigma) w.add(*sigma, 1, first ? 3 : -5);
    return w.canonical();
  }
};

/// Reads the ansatz parameters back off a superpotential in canonical form.
template <class T>
Ansatz<T> ansatz_of(const BasicSuperpotential<T>& w, Family family, bool with_sigma) {
  const bool first = family == Family::First;
  Ansatz<T> a;
  a.xi = w.coefficient(-1, 1);
  a.eta = w.coefficient(1, -1);
  a.zeta = w.coefficient(1, first ? 1 : -3);
  if (with_sigma) a.sigma = w.coefficient(1, first ? 3 : -5);
  return a;
}

template <class T>
struct Constraint {
  std::string name;
  T residual;
};

template <class T>
struct CdsiStepResult {
  Family family = Family::First;
  int m = 1;
  int step = 1;
  /// Parameters (L, A, B_k, lambda) of the original potential.
  BasicPotentialSpec<T> source;
  /// Potential factorized at this step: the source for step 1, the step-1
  /// partner raised by R + E_0 for step 2.
  BasicPotentialSpec<T> potential;
  Ansatz<T> ansatz;
  T ground_energy{0};
  std::vector<Constraint<T>> constraints;
  /// W^2 + f W' = V[partner] + partner_shift (step 1 only).
  std::optional<BasicPotentialSpec<T>> partner;
  T partner_shift{0};

  BasicSuperpotential<T> superpotential() const {
    return ansatz.superpotential(family, source.lambda);
  }

  bool satisfied(double tol = 0) const {
    for (const auto& c : constraints) {
      if (!is_zero(c.residual, tol)) return false;
    }
    return true;
  }
};

namespace detail {

template <class T>
void check_step_input(const BasicPotentialSpec<T>& spec) {
  if (spec.family == Family::Base) {
    throw Error(ErrorCode::InvalidParameter, "step systems apply to the extension families only");
  }
  if (spec.m != 1 && spec.m != 2) {
    throw Error(ErrorCode::UnsupportedOrder,
                "explicit step systems exist for m = 1, 2 only (got m = " +
                    std::to_string(spec.m) + "); use general_two_state");
  }
  validate(spec);
}

// Combinations that recur in the m = 2 systems.
template <class T>
struct M2Terms {
  T s, X, Y, C, B1_base;
};

template <class T>
M2Terms<T> m2_terms(const BasicPotentialSpec<T>& spec) {
  const T& B2 = spec.B[1];
  const T& B3 = spec.B[2];
  const T& B4 = spec.B[3];
  M2Terms<T> t;
  t.s = scalar_sqrt(B4);
  const T q = B3 * B3 / (4 * B4);
  t.X = B2 + B3 / 2 + 3 * B4 / 4 - q;
  t.Y = B2 - 3 * B3 / 2 - 5 * B4 / 4 - q;
  t.C = B2 - B3 / 2 - B4 / 4 - q;
  t.B1_base = -B3 * B3 * (B3 - B4) / (8 * B4 * B4) +
              (2 * B2 * (B3 - B4) - 3 * B3 * B4 / 2 - 5 * B4 * B4 / 2) / (4 * B4);
  return t;
}

}  // namespace detail

/// First step: factorize V = W^2 - f W' + E_0.
template <class T>
CdsiStepResult<T> solve_first_step(const BasicPotentialSpec<T>& spec) {
  detail::check_step_input(spec);
  const T& L = spec.L;
  const T& A = spec.A;
  const T& B1 = spec.B[0];
  const T half(ratio<T>(1, 2));

  CdsiStepResult<T> out;
  out.family = spec.family;
  out.m = spec.m;
  out.step = 1;
  out.source = spec;
  out.potential = spec;
  out.ansatz.xi = -L - 1;
  BasicPotentialSpec<T> partner = spec;
  partner.L = L + 1;
  partner.shift = T(0);

  if (spec.family == Family::First) {
    const T lambda = spec.lambda;
    if (spec.m == 1) {
      const T& B2 = spec.B[1];
      const T s = scalar_sqrt(B2);
      const T u = B1 / (2 * s) + s / 2 + L + 2;
      out.ansatz.zeta = lambda * s;
      out.ansatz.eta = lambda * u;
      out.ground_energy = lambda * (B1 + B2 + 3 * B1 / (2 * s) + ratio<T>(9, 2) * s + 5) +
                          lambda * L * (B1 / s + 3 * s + 5) + lambda * L * L;
      out.constraints.push_back({"A", A - u * (u + 1)});
      partner.A = A - B1 / s - s - 2 * L - 4;
      partner.B[0] = B1 + 4 * s;
      out.partner_shift = -out.ground_energy + lambda * (B1 / s - s + 2 * L + 4);
    } else {
      const auto [s, X, Y, C, B1_base] = detail::m2_terms(spec);
      const T& B2 = spec.B[1];
      const T& B3 = spec.B[2];
      const T& B4 = spec.B[3];
      const T q = B3 * B3 / (4 * B4);
      const T u = X / (2 * s) + L + 3;
      out.ansatz.sigma = lambda * s;
      out.ansatz.zeta = lambda * (B3 + B4) / (2 * s);
      out.ansatz.eta = lambda * u;
      out.ground_energy =
          lambda / (2 * B4) * (X * (B3 + B4) + 16 * B4) +
          lambda / (2 * s) * (3 * B2 + ratio<T>(13, 2) * B3 + ratio<T>(29, 4) * B4 - 3 * q) +
          lambda * L * ((B2 + ratio<T>(3, 2) * B3 + ratio<T>(7, 4) * B4 - q) / s + 7) +
          lambda * L * L;
      out.constraints.push_back({"A", A - u * (u + 1)});
      out.constraints.push_back({"B1", B1 - (B1_base + (B3 - 2 * B4) / s - 2 * L * s)});
      partner.A = A - X / s - 2 * L - 6;
      partner.B[0] = B1 + 2 * (B3 - 2 * B4) / s;
      partner.B[1] = B2 + 8 * s;
      out.partner_shift = -out.ground_energy + lambda * (C / s + 2 * L + 6);
    }
  } else {
    const T a = -spec.lambda;
    if (spec.m == 1) {
      const T& B2 = spec.B[1];
      const T s = scalar_sqrt(B2);
      const T u = B1 / (2 * s) + s / 2 + ratio<T>(3, 2);
      out.ansatz.zeta = a * s;
      out.ansatz.eta = a * u;
      out.ground_energy = a * (B1 + B2 + 3 * B1 / (2 * s) + ratio<T>(9, 2) * s + ratio<T>(11, 2)) +
                          a * L * (B1 / s + 3 * s + 5) + a * L * L;
      out.constraints.push_back(
          {"A", A - (u * (B1 / (2 * s) - ratio<T>(3, 2) * s + half) - 2 * L * s)});
      partner.A = A + B1 / s - 3 * s + 3;
      partner.B[0] = B1 + 6 * s;
      out.partner_shift = -out.ground_energy + a * (B1 / s - 3 * s + 3);
    } else {
      const auto [s, X, Y, C, B1_base] = detail::m2_terms(spec);
      const T& B2 = spec.B[1];
      const T& B3 = spec.B[2];
      const T& B4 = spec.B[3];
      const T q = B3 * B3 / (4 * B4);
      const T u = X / (2 * s) + ratio<T>(5, 2);
      out.ansatz.sigma = a * s;
      out.ansatz.zeta = a * (B3 + B4) / (2 * s);
      out.ansatz.eta = a * u;
      out.ground_energy =
          a / (2 * B4) * (X * (B3 + B4) + 17 * B4) +
          a / (2 * s) * (3 * B2 + ratio<T>(13, 2) * B3 + ratio<T>(29, 4) * B4 - 3 * q) +
          a * L * ((B2 + ratio<T>(3, 2) * B3 + ratio<T>(7, 4) * B4 - q) / s + 7) + a * L * L;
      out.constraints.push_back(
          {"A", A - (u * (Y / (2 * s) + ratio<T>(3, 2)) - L * (B3 + B4) / s)});
      out.constraints.push_back({"B1", B1 - (B1_base + (B3 - 2 * B4) / s - 2 * L * s)});
      partner.A = A + Y / s + 5;
      partner.B[0] = B1 + (3 * B3 - 5 * B4) / s;
      partner.B[1] = B2 + 10 * s;
      out.partner_shift = -out.ground_energy + a * (Y / s + 5);
    }
  }
  out.partner = partner;
  return out;
}

/// Second step: factorize the step-1 partner, V[partner] + R + E_0 =
/// W'^2 - f W'' + E'_0.
template <class T>
CdsiStepResult<T> solve_second_step(const CdsiStepResult<T>& first) {
  if (first.step != 1 || !first.partner) {
    throw Error(ErrorCode::InvalidParameter, "second step expects a first-step result");
  }
  const BasicPotentialSpec<T>& spec = first.source;
  const T& L = spec.L;
  const T& A = spec.A;
  const T& B1 = spec.B[0];

  CdsiStepResult<T> out;
  out.family = first.family;
  out.m = first.m;
  out.step = 2;
  out.source = spec;
  out.potential = *first.partner;
  out.potential.shift = first.partner_shift + first.ground_energy;
  out.ansatz = first.ansatz;
  out.ansatz.xi = -L - 2;

  if (spec.family == Family::First) {
    const T lambda = spec.lambda;
    if (spec.m == 1) {
      const T s = scalar_sqrt(spec.B[1]);
      const T& B2 = spec.B[1];
      const T v = B1 / (2 * s) + s / 2 + L;
      out.ansatz.eta = first.ansatz.eta + 3 * lambda;
      out.ground_energy = lambda * (B1 + B2 + 7 * B1 / (2 * s) + ratio<T>(21, 2) * s + 25) +
                          lambda * L * (B1 / s + 3 * s + 13) + lambda * L * L;
      out.constraints.push_back({"A", A - ((v + 6) * (v + 7) - 8)});
    } else {
      const auto [s, X, Y, C, B1_base] = detail::m2_terms(spec);
      const T& B2 = spec.B[1];
      const T& B3 = spec.B[2];
      const T& B4 = spec.B[3];
      const T q = B3 * B3 / (4 * B4);
      const T v = X / (2 * s) + L;
      out.ansatz.eta = first.ansatz.eta + 5 * lambda;
      out.ground_energy =
          lambda / (2 * B4) * (X * (B3 + B4) + 80 * B4) +
          lambda / (2 * s) *
              (7 * B2 + ratio<T>(33, 2) * B3 + ratio<T>(73, 4) * B4 - 7 * q + 4 * s) +
          lambda * L * ((B2 + ratio<T>(3, 2) * B3 + ratio<T>(7, 4) * B4 - q) / s + 19) +
          lambda * L * L;
      out.constraints.push_back({"A", A - ((v + 9) * (v + 10) - 12)});
      out.constraints.push_back({"B1", B1 - (B1_base + (3 * B3 - 4 * B4) / s - 2 * L * s)});
    }
  } else {
    const T a = -spec.lambda;
    if (spec.m == 1) {
      const T s = scalar_sqrt(spec.B[1]);
      const T& B2 = spec.B[1];
      const T w = B1 / (2 * s);
      out.ansatz.eta = first.ansatz.eta + 3 * a;
      out.ground_energy =
          a * (B1 + B2 + 7 * B1 / (2 * s) + ratio<T>(21, 2) * s + ratio<T>(59, 2)) +
          a * L * (B1 / s + 3 * s + 13) + a * L * L;
      out.constraints.push_back(
          {"A", A - ((w + s / 2 + ratio<T>(9, 2)) * (w - ratio<T>(3, 2) * s + ratio<T>(7, 2)) -
                     B1 / s + s - 3 - 2 * L * s)});
    } else {
      const auto [s, X, Y, C, B1_base] = detail::m2_terms(spec);
      const T& B2 = spec.B[1];
      const T& B3 = spec.B[2];
      const T& B4 = spec.B[3];
      const T q = B3 * B3 / (4 * B4);
      out.ansatz.eta = first.ansatz.eta + 5 * a;
      out.ground_energy =
          a / (2 * B4) * (X * (B3 + B4) + 75 * B4) +
          a / (2 * s) *
              (7 * B2 + ratio<T>(33, 2) * B3 + ratio<T>(73, 4) * B4 - 7 * q + 18 * s) +
          a * L / s * (B2 + ratio<T>(3, 2) * B3 + ratio<T>(7, 4) * B4 - q + 19 * s) + a * L * L;
      out.constraints.push_back(
          {"A", A - ((X / (2 * s) + ratio<T>(15, 2)) * (Y / (2 * s) + ratio<T>(13, 2)) - C / s -
                     5 - L * (B3 + B4) / s)});
      out.constraints.push_back({"B1", B1 - (B1_base + (3 * B3 - 4 * B4) / s - 2 * L * s)});
    }
  }
  return out;
}

/// Reduced potential on which both step systems are satisfied.
template <class T>
BasicPotentialSpec<T> compatibility(Family family, int m, const T& L, const T& B2m,
                                    const T& lambda) {
  if (family == Family::Base) {
    throw Error(ErrorCode::InvalidParameter, "compatibility applies to the extension families");
  }
  if (m != 1 && m != 2) {
    throw Error(ErrorCode::UnsupportedOrder,
                "explicit compatibility conditions exist for m = 1, 2 only");
  }
  check_family_sign(family, lambda);
  check_top_coefficient(B2m);
  if (L < 0) throw Error(ErrorCode::InvalidParameter, "L must be >= 0");
  const T s = scalar_sqrt(B2m);
  BasicPotentialSpec<T> spec;
  spec.family = family;
  spec.m = m;
  spec.L = L;
  spec.lambda = lambda;
  spec.B.assign(2 * m, B2m);
  if (family == Family::First) {
    if (m == 1) {
      spec.B[0] = -B2m - s * (2 * L + 7);
      spec.A = ratio<T>(3, 4);
    } else {
      spec.B[1] = -B2m - s * (2 * L + 11);
      spec.B[0] = -B2m - s * (2 * L + 1);
      spec.A = ratio<T>(15, 4);
    }
  } else {
    if (m == 1) {
      spec.B[0] = B2m - 6 * s;
      spec.A = -B2m - (2 * L + 1) * s + ratio<T>(15, 4);
    } else {
      spec.B[1] = B2m - 10 * s;
      spec.B[0] = -B2m - (2 * L + 1) * s;
      spec.A = -B2m - (2 * L + 1) * s + ratio<T>(35, 4);
    }
  }
  return spec;
}

/// Ground and first excited state of a reduced QES potential.
template <class T>
struct TwoStateSolution {
  Family family = Family::First;
  int m = 1;
  T L{0};
  T B2m{1};
  T lambda{1};
  BasicPotentialSpec<T> spec;
  GeneratingPair<T> pair;
  BasicSuperpotential<T> W;          // factorizes spec
  BasicSuperpotential<T> W_partner;  // factorizes the partner
  T E0{0};
  T E1{0};
  T delta_e{0};
  BasicWavefunctionForm<T> psi0;
  BasicWavefunctionForm<T> psi1;
  BasicWavefunctionForm<T> psi0_partner;
  double r0 = 0;
};

/// W_+ and W_- with f W_+' = W_+ W_- + delta_e.
template <class T>
GeneratingPair<T> generating_pair(Family family, int m, const T& L, const T& B2m,
                                  const T& lambda) {
  check_order(m);
  check_top_coefficient(B2m);
  check_family_sign(family, lambda);
  const T s = scalar_sqrt(B2m);
  const T K = 2 * L + 3 + 2 * s;
  GeneratingPair<T> pair{BasicSuperpotential<T>(lambda), BasicSuperpotential<T>(lambda), T(0)};
  pair.w_plus.add(-(2 * L + 3), -1, 1);
  pair.w_minus.add(T(-1), -1, -1);
  if (family == Family::First) {
    for (int i = 0; i < m; ++i) pair.w_plus.add(2 * lambda * s, 1, 2 * i + 1);
    pair.w_minus.add(2 * T(m) * lambda, 1, -1);
    pair.delta_e = 2 * T(m) * lambda * K;
  } else if (family == Family::Second) {
    const T a = -lambda;
    for (int i = 0; i <= m; ++i) pair.w_plus.add(2 * a * s, 1, -(2 * i + 1));
    pair.w_minus.add(T(2 * m + 2) * a, 1, -1);
    pair.delta_e = T(2 * m + 2) * a * K;
  } else {
    throw Error(ErrorCode::InvalidParameter, "generating pair needs an extension family");
  }
  pair.w_plus = pair.w_plus.canonical();
  pair.w_minus = pair.w_minus.canonical();
  return pair;
}

template <class T>
T ground_energy(Family family, int m, const T& L, const T& B2m, const T& lambda) {
  const T s = scalar_sqrt(B2m);
  if (family == Family::First) {
    return -lambda *
           (T(2 * m + 2) * s + T(3 * m) + ratio<T>(5, 2) + T(2 * m + 3) * L + L * L);
  }
  const T a = -lambda;
  return a * (2 * B2m - T(2 * (m - 1)) * s - T(3 * m) - ratio<T>(1, 2) +
              L * (4 * s - T(2 * m - 1)) + L * L);
}

template <class T>
T first_excited_energy(Family family, int m, const T& L, const T& B2m, const T& lambda) {
  const T s = scalar_sqrt(B2m);
  if (family == Family::First) {
    return lambda *
           (T(2 * m - 2) * s + T(3 * m) - ratio<T>(5, 2) + T(2 * m - 3) * L - L * L);
  }
  const T a = -lambda;
  return a * (2 * B2m + T(2 * (m + 3)) * s + T(3 * m) + ratio<T>(11, 2) +
              L * (4 * s + T(2 * m + 5)) + L * L);
}

/// Closed-form psi_0 and psi_1 as printed for general m.
template <class T>
BasicWavefunctionForm<T> closed_ground_state(Family family, int m, const T& L, const T& B2m,
                                             const T& lambda) {
  const T s = scalar_sqrt(B2m);
  BasicWavefunctionForm<T> psi;
  psi.lambda = lambda;
  psi.r_power = L + 1;
  if (family == Family::First) {
    psi.f_power = T(m);
    for (int j = 1; j <= m; ++j) psi.exp_r2.push_back(-s / 2 * binomial_as<T>(m, j) / T(j));
  } else {
    psi.f_power = s - T(m + 1);
    for (int i = 1; i <= m; ++i) psi.exp_finv.push_back(-s / (2 * T(i)));
  }
  return psi;
}

template <class T>
BasicWavefunctionForm<T> closed_excited_state(Family family, int m, const T& L, const T& B2m,
                                              const T& lambda) {
  const T s = scalar_sqrt(B2m);
  BasicWavefunctionForm<T> psi = closed_ground_state(family, m, L, B2m, lambda);
  psi.prefactor.push_back(-(2 * L + 3));
  if (family == Family::First) {
    psi.f_power = T(-m);
    for (int j = 1; j <= m; ++j) psi.prefactor.push_back(2 * s * binomial_as<T>(m, j));
  } else {
    const T K = 2 * L + 3 + 2 * s;
    for (int j = 1; j <= m + 1; ++j) {
      const T sign = j % 2 == 0 ? T(1) : T(-1);
      psi.prefactor.push_back(-K * sign * binomial_as<T>(m + 1, j));
    }
  }
  return psi;
}

/// Node of psi_1, evaluated through log1p/expm1 to stay accurate when the
/// root argument is close to 1.
double node_location(Family family, int m, double L, double B2m, double lambda);

template <class T>
double node_location(const TwoStateSolution<T>& sol) {
  return node_location(sol.family, sol.m, to_double(sol.L), to_double(sol.B2m),
                       to_double(sol.lambda));
}

template <class T>
TwoStateSolution<T> general_two_state(Family family, int m, const T& L, const T& B2m,
                                      const T& lambda) {
  if (family == Family::Base) {
    throw Error(ErrorCode::InvalidParameter, "two-state construction needs an extension family");
  }
  check_family_sign(family, lambda);
  check_order(m);
  check_top_coefficient(B2m);
  if (L < 0) throw Error(ErrorCode::InvalidParameter, "L must be >= 0");

  TwoStateSolution<T> sol;
  sol.family = family;
  sol.m = m;
  sol.L = L;
  sol.B2m = B2m;
  sol.lambda = lambda;
  sol.spec = make_qes_spec(family, m, L, B2m, lambda);
  sol.pair = generating_pair(family, m, L, B2m, lambda);
  sol.W = sol.pair.ground();
  sol.W_partner = sol.pair.partner();
  sol.E0 = ground_energy(family, m, L, B2m, lambda);
  sol.E1 = first_excited_energy(family, m, L, B2m, lambda);
  sol.delta_e = sol.pair.delta_e;
  if (!is_zero(T(sol.E1 - sol.E0 - sol.delta_e), 1e-9 * (1.0 + std::fabs(to_double(sol.E0)))) ||
      !(sol.delta_e > 0)) {
    throw Error(ErrorCode::InvalidParameter,
                "energy gap E1 - E0 does not match the generating pair");
  }
  sol.psi0 = closed_ground_state(family, m, L, B2m, lambda);
  sol.psi1 = closed_excited_state(family, m, L, B2m, lambda);
  sol.psi0_partner = wavefunction_from_superpotential(sol.W_partner);
  sol.r0 = node_location(sol);
  return sol;
}

TwoStateSolution<double> to_double(const TwoStateSolution<Rational>& sol);

}  // namespace qes
