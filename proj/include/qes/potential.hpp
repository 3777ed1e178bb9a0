#pragma once

// Base oscillator and the two QES extension families on a constant-curvature
// space:
//   family 1:  L(L+1)/r^2 + lambda A - lambda A / f^2 + lambda sum_k B_k f^{2k}
//   family 2:  L(L+1)/r^2 + lambda A - lambda A / f^2 - lambda sum_k B_k / f^{2k+2}
// with k = 1..2m. The base oscillator is the B-free member.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qes/curvature.hpp"
#include "qes/error.hpp"
#include "qes/scalar.hpp"

namespace qes {

enum class Family { Base, First, Second };

constexpr std::string_view family_name(Family family) {
  switch (family) {
    case Family::Base: return "base";
    case Family::First: return "family1";
    case Family::Second: return "family2";
  }
  return "unknown";
}

Family family_from_string(std::string_view name);
Family family_from_index(int index);

/// Largest extension order accepted; keeps every binomial in 64 bits.
inline constexpr int kMaxOrder = 60;

template <class T>
struct BasicPotentialSpec {
  Family family = Family::Base;
  int m = 0;  // extension order; 0 for the base oscillator
  T L{0};
  T A{0};
  std::vector<T> B;  // B_1 .. B_{2m}
  T shift{0};
  T lambda{1};

  const T& top_coefficient() const { return B.back(); }
};

using PotentialSpec = BasicPotentialSpec<double>;
using ExactPotentialSpec = BasicPotentialSpec<Rational>;

template <class T>
struct QesCoefficients {
  T A;
  std::vector<T> B;
};

inline void check_order(int m) {
  if (m < 1 || m > kMaxOrder) {
    throw Error(ErrorCode::InvalidOrder,
                "extension order m must lie in [1, " + std::to_string(kMaxOrder) +
                    "], got " + std::to_string(m));
  }
}

template <class T>
void check_top_coefficient(const T& B2m) {
  if (!(B2m > 0)) {
    throw Error(ErrorCode::InvalidParameter, "B_2m must be positive, got " + to_string(B2m));
  }
}

/// Constrained first-family coefficients for which the ground and first
/// excited states are known in closed form.
template <class T>
QesCoefficients<T> family1_coefficients(int m, const T& L, const T& B2m) {
  check_order(m);
  check_top_coefficient(B2m);
  const T s = scalar_sqrt(B2m);
  QesCoefficients<T> out;
  out.A = (T(m) + ratio<T>(1, 2)) * (T(m) - ratio<T>(1, 2));
  out.B.assign(2 * m, B2m);
  const T low = -B2m - (2 * L + 1) * s;
  for (int k = 1; k < m; ++k) out.B[k - 1] = low;
  out.B[m - 1] = -B2m - (2 * L + T(4 * m + 3)) * s;
  return out;
}

/// Constrained second-family coefficients (lambda < 0 regime).
template <class T>
QesCoefficients<T> family2_coefficients(int m, const T& L, const T& B2m) {
  check_order(m);
  check_top_coefficient(B2m);
  const T s = scalar_sqrt(B2m);
  QesCoefficients<T> out;
  out.A = -B2m - (2 * L + 1) * s + ratio<T>((2 * m + 1) * (2 * m + 3), 4);
  out.B.assign(2 * m, B2m);
  const T low = -B2m - (2 * L + 1) * s;
  for (int k = 1; k < m; ++k) out.B[k - 1] = low;
  out.B[m - 1] = B2m - T(2 * (2 * m + 1)) * s;
  return out;
}

template <class T>
void check_family_sign(Family family, const T& lambda) {
  if (lambda == 0) {
    throw Error(ErrorCode::DegenerateCurvature, "lambda must be nonzero");
  }
  if (family == Family::First && !(lambda > 0)) {
    throw Error(ErrorCode::SignMismatch, "family 1 requires lambda > 0");
  }
  if (family == Family::Second && !(lambda < 0)) {
    throw Error(ErrorCode::SignMismatch, "family 2 requires lambda < 0");
  }
}

template <class T>
void validate(const BasicPotentialSpec<T>& spec) {
  check_family_sign(spec.family, spec.lambda);
  if (spec.L < 0) {
    throw Error(ErrorCode::InvalidParameter, "effective angular momentum L must be >= 0");
  }
  if (spec.family == Family::Base) {
    if (!spec.B.empty()) {
      throw Error(ErrorCode::InvalidParameter, "base oscillator takes no B coefficients");
    }
    return;
  }
  check_order(spec.m);
  if (spec.B.size() != static_cast<std::size_t>(2 * spec.m)) {
    throw Error(ErrorCode::InvalidParameter,
                "expected " + std::to_string(2 * spec.m) + " B coefficients, got " +
                    std::to_string(spec.B.size()));
  }
  check_top_coefficient(spec.B.back());
}

/// Reduced (compatible) QES potential of the given family and order.
template <class T>
BasicPotentialSpec<T> make_qes_spec(Family family, int m, const T& L, const T& B2m,
                                    const T& lambda) {
  if (family == Family::Base) {
    throw Error(ErrorCode::InvalidParameter, "the base oscillator has no QES extension order");
  }
  check_family_sign(family, lambda);
  if (L < 0) throw Error(ErrorCode::InvalidParameter, "L must be >= 0");
  const QesCoefficients<T> c = family == Family::First ? family1_coefficients(m, L, B2m)
                                                       : family2_coefficients(m, L, B2m);
  BasicPotentialSpec<T> spec;
  spec.family = family;
  spec.m = m;
  spec.L = L;
  spec.A = c.A;
  spec.B = c.B;
  spec.lambda = lambda;
  return spec;
}

template <class T>
struct BasicOscillatorSpec {
  T beta;
  T lambda;
  T L{0};

  T A() const { return (beta / lambda) * (beta / lambda + 1); }
  /// Ground-state energy beta (2L+3) - lambda (L+1)^2.
  T ground_energy() const { return beta * (2 * L + 3) - lambda * (L + 1) * (L + 1); }
  BasicOscillatorSpec shifted() const { return {beta - lambda, lambda, L + 1}; }
};

using OscillatorSpec = BasicOscillatorSpec<double>;

template <class T>
BasicPotentialSpec<T> oscillator_from_beta(const T& beta, const T& lambda, const T& L = T(0)) {
  if (lambda == 0) throw Error(ErrorCode::DegenerateCurvature, "lambda must be nonzero");
  BasicPotentialSpec<T> spec;
  spec.family = Family::Base;
  spec.L = L;
  spec.A = BasicOscillatorSpec<T>{beta, lambda, L}.A();
  spec.lambda = lambda;
  return spec;
}

template <class T>
BasicPotentialSpec<T> to_spec(const BasicOscillatorSpec<T>& osc) {
  return oscillator_from_beta(osc.beta, osc.lambda, osc.L);
}

PotentialSpec to_double(const ExactPotentialSpec& spec);

/// Potential at r; throws DomainError outside (0, r_max).
double eval_potential(const PotentialSpec& spec, double r);
/// Potential at a precomputed (r, f) pair, no domain check.
double eval_potential(const PotentialSpec& spec, const RadialPoint& p);

/// True when the spec carries exactly the reduced QES coefficients of its
/// family for its own (m, L, B_2m). Coefficients are compared with relative
/// tolerance `tol` (exactly for rationals).
template <class T>
bool is_reduced_qes(const BasicPotentialSpec<T>& spec, double tol) {
  if (spec.family == Family::Base || spec.m < 1 ||
      spec.B.size() != static_cast<std::size_t>(2 * spec.m) || !(spec.B.back() > 0)) {
    return false;
  }
  const QesCoefficients<T> c = spec.family == Family::First
                                   ? family1_coefficients(spec.m, spec.L, spec.B.back())
                                   : family2_coefficients(spec.m, spec.L, spec.B.back());
  auto close = [tol](const T& a, const T& b) {
    return is_zero(T(a - b), tol * (1.0 + to_double(scalar_abs(b))));
  };
  if (!close(spec.A, c.A) || !is_zero(spec.shift, tol)) return false;
  for (std::size_t k = 0; k < c.B.size(); ++k) {
    if (!close(spec.B[k], c.B[k])) return false;
  }
  return true;
}

}  // namespace qes
