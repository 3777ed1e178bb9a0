#include "qes/superpotential.hpp"

#include <cmath>

namespace qes {

Superpotential to_double(const BasicSuperpotential<Rational>& w) {
  Superpotential out(to_double(w.lambda()));
  for (const auto& t : w.terms()) out.add(to_double(t.coeff), t.r_exp, t.f_exp);
  return out;
}

SuperValue evaluate(const Superpotential& w, const RadialPoint& p) {
  const double lambda = w.lambda();
  SuperValue out{0, 0};
  for (const auto& t : w.terms()) {
    const double rp = t.r_exp == 1 ? p.r : 1.0 / p.r;
    const double fq = std::pow(p.f, t.f_exp);
    const double term = t.coeff * rp * fq;
    out.value += term;
    // d/dr[r^p f^q] = (p / r + q lambda r / f^2) r^p f^q
    out.derivative += term * (t.r_exp / p.r + t.f_exp * lambda * p.r / (p.f * p.f));
  }
  return out;
}

double riccati_apply(const Superpotential& w, RiccatiSign sign, const RadialPoint& p) {
  const SuperValue v = evaluate(w, p);
  const double fw = p.f * v.derivative;
  return sign == RiccatiSign::Minus ? v.value * v.value - fw : v.value * v.value + fw;
}

double riccati_apply(const Superpotential& w, RiccatiSign sign, double r) {
  const Deformation def(w.lambda());
  return riccati_apply(w, sign, point_from_radius(def, r));
}

double generating_identity_residual(const GeneratingPair<double>& pair, const RadialPoint& p) {
  const SuperValue plus = evaluate(pair.w_plus, p);
  const SuperValue minus = evaluate(pair.w_minus, p);
  const double a = p.f * plus.derivative;
  const double b = plus.value * minus.value;
  return (a - b - pair.delta_e) / (1.0 + std::fabs(a) + std::fabs(b));
}

double w_minus_from_w_plus(const Superpotential& w_plus, double delta_e, double r) {
  const Deformation def(w_plus.lambda());
  const RadialPoint p = point_from_radius(def, r);
  const SuperValue v = evaluate(w_plus, p);
  double scale = 0;
  for (const auto& t : w_plus.terms()) {
    scale += std::fabs(t.coeff * (t.r_exp == 1 ? p.r : 1.0 / p.r) * std::pow(p.f, t.f_exp));
  }
  if (std::fabs(v.value) <= 1e-14 * scale) {
    throw Error(ErrorCode::PoleAtNode,
                "W_+ vanishes at r = " + to_string(r) + " (node of psi_1)");
  }
  return (p.f * v.derivative - delta_e) / v.value;
}

}  // namespace qes
