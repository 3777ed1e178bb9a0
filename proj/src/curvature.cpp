#include "qes/curvature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qes/error.hpp"
#include "qes/scalar.hpp"

namespace qes {

Deformation::Deformation(double lambda) : lambda_(lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) {
    throw Error(ErrorCode::DegenerateCurvature,
                "curvature parameter lambda must be finite and nonzero");
  }
}

double Deformation::domain_max() const {
  if (lambda_ > 0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(-lambda_);
}

double Deformation::arc_max() const {
  if (lambda_ > 0) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / (2.0 * std::sqrt(-lambda_));
}

double domain_max(double lambda) { return Deformation(lambda).domain_max(); }

namespace {

void require_in_domain(const Deformation& def, double r) {
  if (!def.in_domain(r)) {
    throw Error(ErrorCode::DomainError,
                "radius " + to_string(r) + " outside (0, " + to_string(def.domain_max()) + ")");
  }
}

}  // namespace

double deformation_factor(const Deformation& def, double r) {
  require_in_domain(def, r);
  return std::sqrt(1.0 + def.lambda() * r * r);
}

double arc_coordinate(const Deformation& def, double r) {
  require_in_domain(def, r);
  const double s = std::sqrt(def.abs_lambda());
  if (def.lambda() > 0) return std::asinh(s * r) / s;
  return std::asin(s * r) / s;
}

double radius_from_arc(const Deformation& def, double x) {
  if (!(x > 0 && x < def.arc_max())) {
    throw Error(ErrorCode::DomainError, "arc coordinate " + to_string(x) + " outside domain");
  }
  const double s = std::sqrt(def.abs_lambda());
  if (def.lambda() > 0) return std::sinh(s * x) / s;
  return std::sin(s * x) / s;
}

RadialPoint point_from_arc(const Deformation& def, double x) {
  const double r = radius_from_arc(def, x);
  const double s = std::sqrt(def.abs_lambda());
  const double f = def.lambda() > 0 ? std::cosh(s * x) : std::cos(s * x);
  return {r, f};
}

RadialPoint point_from_radius(const Deformation& def, double r) {
  return {r, deformation_factor(def, r)};
}

RadialReduction reduce_radial(int d, int l, double lambda, double curved_energy) {
  if (d < 2) throw Error(ErrorCode::InvalidParameter, "space dimension must be >= 2");
  if (l < 0) throw Error(ErrorCode::InvalidParameter, "angular momentum l must be >= 0");
  RadialReduction out;
  out.d = d;
  out.l = l;
  out.L = l + (d - 3) / 2.0;
  out.energy_shift = 0.25 * lambda * (d - 1) * (d - 1);
  out.E = curved_energy - out.energy_shift;
  out.negative_L = out.L < 0;
  return out;
}

}  // namespace qes
