#pragma once

// Full invariant suite for one reduced QES configuration: the closed forms
// are checked against the algebraic identities and against the oracle.

#include <string>
#include <vector>

#include "qes/oracle.hpp"
#include "qes/potential.hpp"

namespace qes {

struct VerifyConfig {
  Family family = Family::First;
  int m = 1;
  double L = 1;
  double lambda = 1;
  double B2m = 1;
  GridOptions grid;
  /// Added to B_1 of the potential handed to the oracle and the residual
  /// checks; nonzero values break the constraint on purpose.
  double perturb = 0;
  int riccati_points = 1000;
  /// Grid doublings tried when the oracle reports GridTooCoarse.
  int grid_refinements = 2;
};

enum class CheckKind { AtMost, Equals };

struct Check {
  std::string name;
  CheckKind kind = CheckKind::AtMost;
  double value = 0;
  double threshold = 0;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  VerifyConfig config;
  std::string config_id;
  double E0 = 0;
  double E1 = 0;
  double r0 = 0;
  double E0_oracle = 0;
  double E1_oracle = 0;
  int oracle_grid = 0;  // N actually used by the oracle
  std::vector<Check> checks;

  bool pass() const;
  const Check* find(const std::string& name) const;
};

std::string config_id(Family family, int m, double L, double lambda, double B2m);

/// Log-spaced radii covering the domain: [1e-3, 4/sqrt(lambda)] or
/// [1e-3, (1 - 1e-6) r_max].
std::vector<double> sample_radii(double lambda, int n);

VerificationReport verify(const VerifyConfig& config);

}  // namespace qes
