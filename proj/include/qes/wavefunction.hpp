#pragma once

// Closed-form eigenfunctions
//     psi(r) = P(s) r^a f^b exp( sum_j c_j (lambda r^2)^j + sum_k d_k f^{-2k} ),
// with s = |lambda| r^2. Forms stay unnormalized; evaluation works in log
// space so that steep exponents do not overflow.

#include <cmath>
#include <vector>

#include "qes/curvature.hpp"
#include "qes/scalar.hpp"

namespace qes {

template <class T>
struct BasicWavefunctionForm {
  T lambda{1};
  T r_power{0};
  T f_power{0};
  std::vector<T> exp_r2;     // c_1, c_2, ...: coefficient of (lambda r^2)^j
  std::vector<T> exp_finv;   // d_1, d_2, ...: coefficient of f^{-2k}
  std::vector<T> prefactor;  // ascending coefficients in s = |lambda| r^2; empty means 1

  bool has_prefactor() const { return !prefactor.empty(); }
};

using WavefunctionForm = BasicWavefunctionForm<double>;

template <class T>
void trim_trailing_zeros(std::vector<T>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

/// Structural equality after trimming trailing zero coefficients; exact for
/// rationals.
template <class T>
bool same_form(BasicWavefunctionForm<T> a, BasicWavefunctionForm<T> b, double tol = 0) {
  for (auto* v : {&a.exp_r2, &a.exp_finv, &b.exp_r2, &b.exp_finv}) trim_trailing_zeros(*v);
  auto eq = [tol](const T& x, const T& y) { return is_zero(T(x - y), tol); };
  auto eq_list = [&eq](const std::vector<T>& x, const std::vector<T>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!eq(x[i], y[i])) return false;
    }
    return true;
  };
  return eq(a.lambda, b.lambda) && eq(a.r_power, b.r_power) && eq(a.f_power, b.f_power) &&
         eq_list(a.exp_r2, b.exp_r2) && eq_list(a.exp_finv, b.exp_finv) &&
         eq_list(a.prefactor, b.prefactor);
}

WavefunctionForm to_double(const BasicWavefunctionForm<Rational>& psi);

/// psi, psi', psi'' at one point, all multiplied by exp(-log_scale).
struct WaveSample {
  double value;
  double d1;
  double d2;
};

/// log of the positive envelope r^a f^b exp(...), without the prefactor.
double log_envelope(const WavefunctionForm& psi, const RadialPoint& p);
double prefactor_value(const WavefunctionForm& psi, double r);

WaveSample sample(const WavefunctionForm& psi, const RadialPoint& p, double log_scale = 0);

/// psi(r) * exp(-log_scale); throws DomainError outside the domain.
double evaluate(const WavefunctionForm& psi, double r, double log_scale = 0);

/// Range of r that carries the wavefunction: for lambda < 0 the whole
/// interval, for lambda > 0 the radius beyond which log|psi| stays more than
/// `depth` below its peak. Also reports the peak of log|psi|.
struct WaveProfile {
  double log_peak;
  double r_end;
};

WaveProfile profile(const WavefunctionForm& psi, double depth = 80.0);

/// -sqrt(f) d/dr f d/dr sqrt(f) applied to psi, from analytic derivatives.
double deformed_kinetic(const WaveSample& s, const RadialPoint& p, double lambda);

}  // namespace qes
