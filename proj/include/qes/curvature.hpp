#pragma once

#include <limits>

namespace qes {

/// Constant-curvature deformation with curvature kappa = -lambda. The
/// radial variable lives on (0, +inf) for lambda > 0 and on
/// (0, 1/sqrt|lambda|) for lambda < 0. Flat space (lambda = 0) is rejected.
class Deformation {
 public:
  explicit Deformation(double lambda);

  double lambda() const { return lambda_; }
  double abs_lambda() const { return lambda_ < 0 ? -lambda_ : lambda_; }
  bool hyperbolic() const { return lambda_ > 0; }

  /// Upper end of the radial domain: +inf or 1/sqrt|lambda|.
  double domain_max() const;
  /// Arc-coordinate image of the domain end: +inf or pi/(2 sqrt|lambda|).
  double arc_max() const;

  bool in_domain(double r) const { return r > 0 && r < domain_max(); }

 private:
  double lambda_;
};

/// A radial point carrying f(r) alongside r. Near the boundary of the
/// compact domain f is computed from the arc coordinate to avoid the
/// cancellation in sqrt(1 - |lambda| r^2).
struct RadialPoint {
  double r;
  double f;
};

double domain_max(double lambda);
double deformation_factor(const Deformation& def, double r);

double arc_coordinate(const Deformation& def, double r);
double radius_from_arc(const Deformation& def, double x);
RadialPoint point_from_arc(const Deformation& def, double x);
RadialPoint point_from_radius(const Deformation& def, double r);

struct RadialReduction {
  int d = 3;
  int l = 0;
  double L = 0;
  double energy_shift = 0;  // lambda (d-1)^2 / 4
  double E = 0;             // curved_energy - energy_shift
  /// Set when L < 0 (only d = 2, l = 0); the QES solvers need L >= 0.
  bool negative_L = false;
};

RadialReduction reduce_radial(int d, int l, double lambda, double curved_energy);

}  // namespace qes
