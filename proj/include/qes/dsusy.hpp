#pragma once

// Deformed-SUSY factorization  H - E_0 = A+ A-,  A+- = -+ sqrt(f) d/dr sqrt(f) + W,
// with partner potentials V_1,2 = W^2 -+ f W'. Ground states follow from
// psi_0 ~ f^{-1/2} exp(-int W / f) and the first excited state from
// psi_1 ~ A+ psi'_0.

#include <algorithm>
#include <utility>

#include "qes/potential.hpp"
#include "qes/superpotential.hpp"
#include "qes/wavefunction.hpp"

namespace qes {

/// psi_0 ~ f^{-1/2} exp(-int W/f dr), integrated term by term:
///   r^{-1} f     -> ln r
///   r f^{2n+1}   -> f^{2n+2} / (2 lambda (n+1))   (n != -1),  ln f / lambda  (n = -1)
template <class T>
BasicWavefunctionForm<T> wavefunction_from_superpotential(const BasicSuperpotential<T>& w) {
  const T lambda = w.lambda();
  BasicWavefunctionForm<T> psi;
  psi.lambda = lambda;
  psi.f_power = ratio<T>(-1, 2);
  const BasicSuperpotential<T> wc = w.canonical();
  for (const auto& t : wc.terms()) {
    if (t.r_exp == -1) {
      psi.r_power -= t.coeff;  // only r^{-1} f survives canonicalization
      continue;
    }
    const int n = (t.f_exp - 1) / 2;  // W/f = c r f^{2n}
    if (n == -1) {
      psi.f_power -= t.coeff / lambda;
      continue;
    }
    const int K = n + 1;
    const T c = -t.coeff / (2 * lambda * T(K));  // coefficient of f^{2K} in the exponent
    if (K > 0) {
      // f^{2K} = sum_j C(K,j) (lambda r^2)^j; the j = 0 constant is dropped
      if (psi.exp_r2.size() < static_cast<std::size_t>(K)) psi.exp_r2.resize(K, T(0));
      for (int j = 1; j <= K; ++j) psi.exp_r2[j - 1] += c * binomial_as<T>(K, j);
    } else {
      const int k = -K;
      if (psi.exp_finv.size() < static_cast<std::size_t>(k)) psi.exp_finv.resize(k, T(0));
      psi.exp_finv[k - 1] += c;
    }
  }
  trim_trailing_zeros(psi.exp_r2);
  trim_trailing_zeros(psi.exp_finv);
  return psi;
}

/// The annihilation identity W = -f (ln psi)' - f'/2 read backwards: the
/// superpotential whose ground state is the given (prefactor-free) form.
template <class T>
BasicSuperpotential<T> superpotential_from_wavefunction(const BasicWavefunctionForm<T>& psi) {
  if (psi.has_prefactor()) {
    throw Error(ErrorCode::InvalidParameter,
                "only node-free forms without a prefactor define a superpotential");
  }
  const T lambda = psi.lambda;
  BasicSuperpotential<T> w(lambda);
  w.add(-psi.r_power, -1, 1);
  w.add(-(psi.f_power + ratio<T>(1, 2)) * lambda, 1, -1);
  // -f d/dr c_j (lambda r^2)^j = -2 j c_j lambda^j r^{2j-1} f
  //   = -2 j c_j lambda * sum_i C(j-1,i) (-1)^{j-1-i} r f^{2i+1}
  for (std::size_t jj = 0; jj < psi.exp_r2.size(); ++jj) {
    const int j = static_cast<int>(jj) + 1;
    const T base = -2 * T(j) * psi.exp_r2[jj] * lambda;
    for (int i = 0; i < j; ++i) {
      const T sign = (j - 1 - i) % 2 == 0 ? T(1) : T(-1);
      w.add(base * sign * binomial_as<T>(j - 1, i), 1, 2 * i + 1);
    }
  }
  // -f d/dr d_k f^{-2k} = 2 k lambda d_k r f^{-2k-1}
  for (std::size_t kk = 0; kk < psi.exp_finv.size(); ++kk) {
    const int k = static_cast<int>(kk) + 1;
    w.add(2 * T(k) * lambda * psi.exp_finv[kk], 1, -2 * k - 1);
  }
  return w.canonical();
}

/// psi_1 ~ A+ psi'_0 = (W + W_psi) psi'_0 with W_psi the superpotential of
/// psi'_0; the sum is rewritten as r^{-1} f^{q_min} times a polynomial in
/// s = |lambda| r^2 and folded into the form.
template <class T>
BasicWavefunctionForm<T> apply_raising(const BasicSuperpotential<T>& w,
                                       const BasicWavefunctionForm<T>& partner_ground) {
  if (partner_ground.has_prefactor()) {
    throw Error(ErrorCode::InvalidParameter, "raising operator expects a node-free partner state");
  }
  const BasicSuperpotential<T> sum = w + superpotential_from_wavefunction(partner_ground);
  if (sum.empty()) {
    throw Error(ErrorCode::InvalidParameter, "raising operator annihilates the state");
  }
  int q_min = sum.terms().front().f_exp;
  for (const auto& t : sum.terms()) q_min = std::min(q_min, t.f_exp);

  // term / (r^{-1} f^{q_min}) = r^{p+1} f^{2n}, expanded in t = r^2
  std::vector<T> poly;
  auto add = [&poly](std::size_t j, const T& c) {
    if (poly.size() <= j) poly.resize(j + 1, T(0));
    poly[j] += c;
  };
  const T lambda = w.lambda();
  for (const auto& t : sum.terms()) {
    const int n = (t.f_exp - q_min) / 2;
    const std::size_t shift = t.r_exp == 1 ? 1 : 0;
    T lj(1);
    for (int j = 0; j <= n; ++j) {
      add(j + shift, t.coeff * binomial_as<T>(n, j) * lj);
      lj *= lambda;
    }
  }
  // rescale to s = |lambda| r^2
  const T a = scalar_abs(lambda);
  T aj(1);
  for (auto& c : poly) {
    c /= aj;
    aj *= a;
  }
  trim_trailing_zeros(poly);

  BasicWavefunctionForm<T> psi = partner_ground;
  psi.r_power -= 1;
  psi.f_power += T(q_min);
  psi.prefactor = std::move(poly);
  return psi;
}

/// Shape-invariant partner of a reduced QES potential:
///   W^2 + f W' = V[spec'] + R.
template <class T>
struct PartnerShift {
  BasicPotentialSpec<T> spec;
  T R;
};

template <class T>
PartnerShift<T> partner_shift(const BasicPotentialSpec<T>& spec, double tol = 1e-12) {
  if (!is_reduced_qes(spec, tol)) {
    throw Error(ErrorCode::NotConstrained,
                "partner_shift needs a potential in reduced QES form");
  }
  const int m = spec.m;
  const T& L = spec.L;
  const T& B = spec.B.back();
  const T s = scalar_sqrt(B);
  PartnerShift<T> out;
  out.spec = spec;
  out.spec.L = L + 1;
  out.spec.shift = T(0);
  if (spec.family == Family::First) {
    out.spec.A = (T(m) + ratio<T>(3, 2)) * (T(m) + ratio<T>(1, 2));
    for (int k = 0; k < 2 * m; ++k) out.spec.B[k] = k < m ? -B - (2 * L + 3) * s : B;
    out.R = spec.lambda *
            (2 * T(m) * s + T(m) + ratio<T>(3, 2) + (2 * T(m) + 3) * L + L * L);
  } else {
    const T a = -spec.lambda;
    out.spec.A = -B - (2 * L + 3) * s + ratio<T>((2 * m + 1) * (2 * m - 1), 4);
    for (int k = 0; k < 2 * m; ++k) out.spec.B[k] = k < m - 1 ? -B - (2 * L + 3) * s : B;
    out.R = a * (-2 * B + 2 * T(m - 2) * s + T(m) - ratio<T>(1, 2) +
                 L * (-4 * s + T(2 * m - 1)) - L * L);
  }
  return out;
}

/// W = -(L+1) f/r + beta r/f for the base oscillator.
template <class T>
BasicSuperpotential<T> oscillator_superpotential(const BasicOscillatorSpec<T>& osc) {
  BasicSuperpotential<T> w(osc.lambda);
  w.add(-(osc.L + 1), -1, 1);
  w.add(osc.beta, 1, -1);
  return w;
}

/// Partner of the oscillator (beta, L): the oscillator (beta - lambda, L + 1)
/// raised by 2 beta, i.e. W^2 + f W' + E_0 = V[beta - lambda, L + 1] + 2 beta.
template <class T>
PartnerShift<T> oscillator_partner(const BasicOscillatorSpec<T>& osc) {
  return {to_spec(osc.shifted()), 2 * osc.beta - osc.ground_energy()};
}

}  // namespace qes
