#include "qes/cdsi.hpp"

#include <cmath>

namespace qes {

double node_location(Family family, int m, double L, double B2m, double lambda) {
  check_family_sign(family, lambda);
  check_order(m);
  const double ratio_log = std::log1p((2 * L + 3) / (2 * std::sqrt(B2m)));
  const double a = std::fabs(lambda);
  double s0 = 0;
  if (family == Family::First) {
    s0 = std::expm1(ratio_log / m);
  } else {
    s0 = -std::expm1(-ratio_log / (m + 1));
  }
  return std::sqrt(s0 / a);
}

TwoStateSolution<double> to_double(const TwoStateSolution<Rational>& sol) {
  TwoStateSolution<double> out;
  out.family = sol.family;
  out.m = sol.m;
  out.L = to_double(sol.L);
  out.B2m = to_double(sol.B2m);
  out.lambda = to_double(sol.lambda);
  out.spec = to_double(sol.spec);
  out.pair = {to_double(sol.pair.w_plus), to_double(sol.pair.w_minus), to_double(sol.pair.delta_e)};
  out.W = to_double(sol.W);
  out.W_partner = to_double(sol.W_partner);
  out.E0 = to_double(sol.E0);
  out.E1 = to_double(sol.E1);
  out.delta_e = to_double(sol.delta_e);
  out.psi0 = to_double(sol.psi0);
  out.psi1 = to_double(sol.psi1);
  out.psi0_partner = to_double(sol.psi0_partner);
  out.r0 = sol.r0;
  return out;
}

}  // namespace qes
