#pragma once

// Superpotentials are finite sums  c * r^{p} * f^{q}  with p = +-1 and q odd.
// This basis covers the oscillator superpotential and every ansatz used for
// the two extension families, and it is closed under the operations the
// construction needs (sums, W^2 -+ f W', products of two superpotentials).

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "qes/curvature.hpp"
#include "qes/expansion.hpp"
#include "qes/scalar.hpp"

namespace qes {

template <class T>
struct SuperTerm {
  T coeff;
  int r_exp;  // -1 or +1
  int f_exp;  // odd
};

template <class T>
class BasicSuperpotential {
 public:
  BasicSuperpotential() = default;
  explicit BasicSuperpotential(T lambda) : lambda_(std::move(lambda)) {}

  const T& lambda() const { return lambda_; }
  const std::vector<SuperTerm<T>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  BasicSuperpotential& add(const T& coeff, int r_exp, int f_exp) {
    if ((r_exp != 1 && r_exp != -1) || f_exp % 2 == 0) {
      throw Error(ErrorCode::UnsupportedTerm,
                  "superpotential term r^" + std::to_string(r_exp) + " f^" +
                      std::to_string(f_exp) + " outside the odd-power basis");
    }
    terms_.push_back({coeff, r_exp, f_exp});
    return *this;
  }

  /// Unique representation: like terms merged, every r^{-1} f^q rewritten
  /// as r^{-1} f plus r f^{odd} terms, zero coefficients dropped, sorted.
  BasicSuperpotential canonical() const {
    std::map<std::pair<int, int>, T> acc;
    auto put = [&acc](int p, int q, const T& c) {
      T& slot = acc[{p, q}];
      slot += c;
    };
    for (const auto& t : terms_) {
      if (t.r_exp == 1) {
        put(1, t.f_exp, t.coeff);
        continue;
      }
      // r^-1 f^q = r^-1 f^{q-2} + lambda r f^{q-2}     (q > 1)
      // r^-1 f^q = r^-1 f^{q+2} - lambda r f^q         (q < 1)
      int q = t.f_exp;
      while (q > 1) {
        put(1, q - 2, t.coeff * lambda_);
        q -= 2;
      }
      while (q < 1) {
        put(1, q, -t.coeff * lambda_);
        q += 2;
      }
      put(-1, 1, t.coeff);
    }
    BasicSuperpotential out(lambda_);
    for (const auto& [key, c] : acc) {
      if (c != 0) out.terms_.push_back({c, key.first, key.second});
    }
    return out;
  }

  /// Coefficient of r^{r_exp} f^{f_exp} in the canonical form.
  T coefficient(int r_exp, int f_exp) const {
    const BasicSuperpotential c = canonical();
    for (const auto& t : c.terms_) {
      if (t.r_exp == r_exp && t.f_exp == f_exp) return t.coeff;
    }
    return T(0);
  }

  BasicSuperpotential& operator+=(const BasicSuperpotential& o) {
    for (const auto& t : o.terms_) terms_.push_back(t);
    return *this;
  }
  BasicSuperpotential& operator*=(const T& s) {
    for (auto& t : terms_) t.coeff *= s;
    return *this;
  }
  friend BasicSuperpotential operator+(BasicSuperpotential a, const BasicSuperpotential& b) {
    a += b;
    return a.canonical();
  }
  friend BasicSuperpotential operator-(BasicSuperpotential a, BasicSuperpotential b) {
    b *= T(-1);
    a += b;
    return a.canonical();
  }
  friend BasicSuperpotential operator*(const T& s, BasicSuperpotential a) {
    a *= s;
    return a.canonical();
  }

  /// Structural equality of canonical forms (exact for rationals).
  bool same_as(const BasicSuperpotential& o, double tol = 0) const {
    const BasicSuperpotential d = (*this - o);
    for (const auto& t : d.terms_) {
      if (!is_zero(t.coeff, tol)) return false;
    }
    return true;
  }

 private:
  T lambda_{1};
  std::vector<SuperTerm<T>> terms_;
};

using Superpotential = BasicSuperpotential<double>;

Superpotential to_double(const BasicSuperpotential<Rational>& w);

enum class RiccatiSign { Minus, Plus };

struct SuperValue {
  double value;
  double derivative;  // dW/dr
};

SuperValue evaluate(const Superpotential& w, const RadialPoint& p);

/// W^2 - f W' (Minus, gives V_1) or W^2 + f W' (Plus, gives V_2) at r.
double riccati_apply(const Superpotential& w, RiccatiSign sign, double r);
double riccati_apply(const Superpotential& w, RiccatiSign sign, const RadialPoint& p);

/// Exact normal form of W1 * W2.
template <class T>
PotentialExpansion<T> product_expand(const BasicSuperpotential<T>& a,
                                     const BasicSuperpotential<T>& b) {
  PotentialExpansion<T> e(a.lambda());
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      e.add_monomial(s.r_exp + t.r_exp, s.f_exp + t.f_exp, s.coeff * t.coeff);
    }
  }
  return e;
}

/// Exact normal form of f dW/dr, using
/// d/dr[r^p f^q] = p r^{p-1} f^q + q lambda r^{p+1} f^{q-2}.
template <class T>
PotentialExpansion<T> f_derivative_expand(const BasicSuperpotential<T>& w) {
  PotentialExpansion<T> e(w.lambda());
  for (const auto& t : w.terms()) {
    e.add_monomial(t.r_exp - 1, t.f_exp + 1, t.coeff * T(t.r_exp));
    e.add_monomial(t.r_exp + 1, t.f_exp - 1, t.coeff * T(t.f_exp) * w.lambda());
  }
  return e;
}

template <class T>
PotentialExpansion<T> riccati_expand(const BasicSuperpotential<T>& w, RiccatiSign sign) {
  PotentialExpansion<T> e = product_expand(w, w);
  PotentialExpansion<T> d = f_derivative_expand(w);
  if (sign == RiccatiSign::Minus) {
    e -= d;
  } else {
    e += d;
  }
  return e;
}

/// W_+ = W' + W and W_- = W' - W of the first two superpotentials of a
/// hierarchy, tied by f W_+' = W_+ W_- + (E_1 - E_0).
template <class T>
struct GeneratingPair {
  BasicSuperpotential<T> w_plus;
  BasicSuperpotential<T> w_minus;
  T delta_e;

  BasicSuperpotential<T> ground() const { return ratio<T>(1, 2) * (w_plus - w_minus); }
  BasicSuperpotential<T> partner() const { return ratio<T>(1, 2) * (w_plus + w_minus); }
};

/// Exact residual f W_+' - W_+ W_- - delta_e; identically zero for a
/// compatible pair.
template <class T>
PotentialExpansion<T> generating_identity_residual(const GeneratingPair<T>& pair) {
  PotentialExpansion<T> e = f_derivative_expand(pair.w_plus);
  e -= product_expand(pair.w_plus, pair.w_minus);
  e.add_constant(-pair.delta_e);
  return e;
}

/// Pointwise f W_+' - W_+ W_- - delta_e, divided by
/// 1 + |f W_+'| + |W_+ W_-| so that the 1/r^2 and 1/f^n growth of the two
/// products near the ends of the domain does not swamp the comparison.
double generating_identity_residual(const GeneratingPair<double>& pair, const RadialPoint& p);

/// W_-(r) = (f dW_+/dr + E_0 - E_1) / W_+(r); throws PoleAtNode where W_+
/// vanishes.
double w_minus_from_w_plus(const Superpotential& w_plus, double delta_e, double r);

}  // namespace qes
