#include "qes/potential.hpp"

#include <cmath>

namespace qes {

Family family_from_string(std::string_view name) {
  if (name == "base" || name == "0") return Family::Base;
  if (name == "family1" || name == "1") return Family::First;
  if (name == "family2" || name == "2") return Family::Second;
  throw Error(ErrorCode::InvalidParameter, "unknown family '" + std::string(name) + "'");
}

Family family_from_index(int index) {
  switch (index) {
    case 0: return Family::Base;
    case 1: return Family::First;
    case 2: return Family::Second;
    default:
      throw Error(ErrorCode::InvalidParameter, "family must be 1 or 2, got " + std::to_string(index));
  }
}

PotentialSpec to_double(const ExactPotentialSpec& spec) {
  PotentialSpec out;
  out.family = spec.family;
  out.m = spec.m;
  out.L = to_double(spec.L);
  out.A = to_double(spec.A);
  out.shift = to_double(spec.shift);
  out.lambda = to_double(spec.lambda);
  out.B.reserve(spec.B.size());
  for (const auto& b : spec.B) out.B.push_back(to_double(b));
  return out;
}

double eval_potential(const PotentialSpec& spec, double r) {
  const Deformation def(spec.lambda);
  return eval_potential(spec, point_from_radius(def, r));
}

double eval_potential(const PotentialSpec& spec, const RadialPoint& p) {
  const double f2 = p.f * p.f;
  double v = spec.L * (spec.L + 1) / (p.r * p.r) + spec.shift;
  switch (spec.family) {
    case Family::Base:
    case Family::First: {
      v += spec.lambda * spec.A * (1.0 - 1.0 / f2);
      double fk = 1.0;
      double sum = 0;
      for (double b : spec.B) {
        fk *= f2;
        sum += b * fk;
      }
      v += spec.lambda * sum;
      break;
    }
    case Family::Second: {
      // |lambda| form: -|lambda| A + |lambda| A / f^2 + |lambda| sum B_k / f^{2k+2}
      const double a = -spec.lambda;
      const double inv = 1.0 / f2;
      v += -a * spec.A + a * spec.A * inv;
      double fk = inv;
      double sum = 0;
      for (double b : spec.B) {
        fk *= inv;
        sum += b * fk;
      }
      v += a * sum;
      break;
    }
  }
  return v;
}

}  // namespace qes
