#pragma once

// Exact normal form for the potentials produced by the construction. Any
// combination of r^{-2}, r^0, r^2 times even powers of f reduces, using
// f^2 = 1 + lambda r^2, to
//     c / r^2 + sum_k c_k f^{2k},   k in Z,
// and this representation is unique. Riccati images of superpotentials and
// the extension-family potentials both land here, so identities between
// them can be checked coefficient by coefficient.

#include <algorithm>
#include <map>
#include <string>

#include "qes/potential.hpp"
#include "qes/scalar.hpp"

namespace qes {

template <class T>
class PotentialExpansion {
 public:
  explicit PotentialExpansion(T lambda) : lambda_(std::move(lambda)) {}

  const T& lambda() const { return lambda_; }
  const T& inverse_square() const { return inverse_square_; }
  const std::map<int, T>& f_powers() const { return f_powers_; }

  T coefficient(int k) const {
    auto it = f_powers_.find(k);
    return it == f_powers_.end() ? T(0) : it->second;
  }

  void add_inverse_square(const T& c) { inverse_square_ += c; }
  void add_f_power(int k, const T& c) {
    T& slot = f_powers_[k];
    slot += c;
  }
  void add_constant(const T& c) { add_f_power(0, c); }

  /// Adds c r^{r_pow} f^{f_pow} with r_pow in {-2, 0, 2} and f_pow even.
  void add_monomial(int r_pow, int f_pow, const T& c) {
    if (f_pow % 2 != 0) {
      throw Error(ErrorCode::UnsupportedTerm, "odd power of f in potential expansion");
    }
    int k = f_pow / 2;
    switch (r_pow) {
      case 0:
        add_f_power(k, c);
        return;
      case 2: {
        // r^2 f^{2k} = (f^{2k+2} - f^{2k}) / lambda
        const T q = c / lambda_;
        add_f_power(k + 1, q);
        add_f_power(k, -q);
        return;
      }
      case -2:
        // r^-2 f^{2k} = r^-2 f^{2k-2} + lambda f^{2k-2}   (walk k down to 0)
        // r^-2 f^{2k} = r^-2 f^{2k+2} - lambda f^{2k}     (walk k up to 0)
        while (k > 0) {
          add_f_power(k - 1, c * lambda_);
          --k;
        }
        while (k < 0) {
          add_f_power(k, -c * lambda_);
          ++k;
        }
        add_inverse_square(c);
        return;
      default:
        throw Error(ErrorCode::UnsupportedTerm,
                    "power r^" + std::to_string(r_pow) + " outside the expansion basis");
    }
  }

  PotentialExpansion& operator+=(const PotentialExpansion& o) {
    inverse_square_ += o.inverse_square_;
    for (const auto& [k, c] : o.f_powers_) add_f_power(k, c);
    return *this;
  }
  PotentialExpansion& operator-=(const PotentialExpansion& o) {
    inverse_square_ -= o.inverse_square_;
    for (const auto& [k, c] : o.f_powers_) add_f_power(k, -c);
    return *this;
  }
  friend PotentialExpansion operator-(PotentialExpansion a, const PotentialExpansion& b) {
    a -= b;
    return a;
  }
  friend PotentialExpansion operator+(PotentialExpansion a, const PotentialExpansion& b) {
    a += b;
    return a;
  }

  double max_abs() const {
    double m = std::fabs(to_double(inverse_square_));
    for (const auto& [k, c] : f_powers_) m = std::max(m, std::fabs(to_double(c)));
    return m;
  }

  /// Zero test; exact for rationals, absolute tolerance for doubles.
  bool is_zero(double tol = 0) const {
    if (!qes::is_zero(inverse_square_, tol)) return false;
    for (const auto& [k, c] : f_powers_) {
      if (!qes::is_zero(c, tol)) return false;
    }
    return true;
  }

  std::string str() const {
    std::string out = to_string(inverse_square_) + "/r^2";
    for (const auto& [k, c] : f_powers_) {
      if (c == 0) continue;
      out += " + (" + to_string(c) + ") f^" + std::to_string(2 * k);
    }
    return out;
  }

 private:
  T lambda_;
  T inverse_square_{0};
  std::map<int, T> f_powers_;
};

template <class T>
PotentialExpansion<T> expand(const BasicPotentialSpec<T>& spec) {
  PotentialExpansion<T> e(spec.lambda);
  e.add_inverse_square(spec.L * (spec.L + 1));
  e.add_constant(spec.lambda * spec.A + spec.shift);
  e.add_f_power(-1, -spec.lambda * spec.A);
  for (std::size_t i = 0; i < spec.B.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    if (spec.family == Family::Second) {
      e.add_f_power(-(k + 1), -spec.lambda * spec.B[i]);
    } else {
      e.add_f_power(k, spec.lambda * spec.B[i]);
    }
  }
  return e;
}

}  // namespace qes
