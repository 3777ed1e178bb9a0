#include "qes/wavefunction.hpp"

#include <algorithm>
#include <limits>

#include "qes/error.hpp"

namespace qes {

WavefunctionForm to_double(const BasicWavefunctionForm<Rational>& psi) {
  WavefunctionForm out;
  out.lambda = to_double(psi.lambda);
  out.r_power = to_double(psi.r_power);
  out.f_power = to_double(psi.f_power);
  for (const auto& c : psi.exp_r2) out.exp_r2.push_back(to_double(c));
  for (const auto& d : psi.exp_finv) out.exp_finv.push_back(to_double(d));
  for (const auto& p : psi.prefactor) out.prefactor.push_back(to_double(p));
  return out;
}

namespace {

struct LogParts {
  double g;   // log envelope
  double g1;  // d/dr
  double g2;  // d^2/dr^2
};

LogParts log_parts(const WavefunctionForm& psi, const RadialPoint& p) {
  const double lambda = psi.lambda;
  const double r = p.r;
  const double r2 = r * r;
  const double inv_f2 = 1.0 / (p.f * p.f);
  LogParts out{0, 0, 0};

  out.g = psi.r_power * std::log(r) + psi.f_power * std::log(p.f);
  out.g1 = psi.r_power / r + psi.f_power * lambda * r * inv_f2;
  out.g2 = -psi.r_power / r2 + psi.f_power * lambda * (inv_f2 - 2 * lambda * r2 * inv_f2 * inv_f2);

  // c_j (lambda r^2)^j
  const double u = lambda * r2;
  double uj1 = 1.0;  // u^{j-1}
  for (std::size_t i = 0; i < psi.exp_r2.size(); ++i) {
    const double j = static_cast<double>(i + 1);
    const double c = psi.exp_r2[i];
    out.g += c * uj1 * u;
    out.g1 += c * 2 * j * lambda * r * uj1;
    out.g2 += c * 2 * j * (2 * j - 1) * lambda * uj1;
    uj1 *= u;
  }

  // d_k f^{-2k}: d/dr = -2k lambda r f^{-2k-2}
  double fk = 1.0;  // f^{-2k}
  for (std::size_t i = 0; i < psi.exp_finv.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double d = psi.exp_finv[i];
    fk *= inv_f2;
    out.g += d * fk;
    out.g1 += -2 * k * lambda * d * r * fk * inv_f2;
    out.g2 += -2 * k * lambda * d * (fk * inv_f2 - (2 * k + 2) * lambda * r2 * fk * inv_f2 * inv_f2);
  }
  return out;
}

struct Poly {
  double p;
  double dp;
  double ddp;
};

Poly prefactor_parts(const WavefunctionForm& psi, double r) {
  if (psi.prefactor.empty()) return {1, 0, 0};
  const double a = std::fabs(psi.lambda);
  const double s = a * r * r;
  double p = 0, dp = 0, ddp = 0;
  for (auto it = psi.prefactor.rbegin(); it != psi.prefactor.rend(); ++it) {
    ddp = ddp * s + 2 * dp;
    dp = dp * s + p;
    p = p * s + *it;
  }
  // chain rule with ds/dr = 2 a r
  const double sr = 2 * a * r;
  return {p, dp * sr, ddp * sr * sr + dp * 2 * a};
}

}  // namespace

double log_envelope(const WavefunctionForm& psi, const RadialPoint& p) {
  return log_parts(psi, p).g;
}

double prefactor_value(const WavefunctionForm& psi, double r) {
  return prefactor_parts(psi, r).p;
}

WaveSample sample(const WavefunctionForm& psi, const RadialPoint& p, double log_scale) {
  const LogParts g = log_parts(psi, p);
  const Poly q = prefactor_parts(psi, p.r);
  const double e = std::exp(g.g - log_scale);
  return {q.p * e, (q.dp + q.p * g.g1) * e,
          (q.ddp + 2 * q.dp * g.g1 + q.p * (g.g2 + g.g1 * g.g1)) * e};
}

double evaluate(const WavefunctionForm& psi, double r, double log_scale) {
  const Deformation def(psi.lambda);
  return sample(psi, point_from_radius(def, r), log_scale).value;
}

double deformed_kinetic(const WaveSample& s, const RadialPoint& p, double lambda) {
  // -[f^2 psi'' + 2 f f' psi' + (f'^2/4 + f f''/2) psi], f f' = lambda r,
  // f'^2 = lambda^2 r^2 / f^2, f f'' = lambda / f^2
  const double f2 = p.f * p.f;
  const double c0 = 0.25 * lambda * lambda * p.r * p.r / f2 + 0.5 * lambda / f2;
  return -(f2 * s.d2 + 2 * lambda * p.r * s.d1 + c0 * s.value);
}

WaveProfile profile(const WavefunctionForm& psi, double depth) {
  const Deformation def(psi.lambda);
  auto log_abs = [&psi](const RadialPoint& p) {
    const double q = std::fabs(prefactor_value(psi, p.r));
    return log_envelope(psi, p) + (q > 0 ? std::log(q) : -std::numeric_limits<double>::infinity());
  };
  double peak = -std::numeric_limits<double>::infinity();
  if (!def.hyperbolic()) {
    const double xmax = def.arc_max();
    const int n = 4000;
    for (int i = 1; i < n; ++i) {
      peak = std::max(peak, log_abs(point_from_arc(def, xmax * i / n)));
    }
    return {peak, def.domain_max()};
  }
  // lambda > 0: walk outward geometrically, then back off to the last radius
  // still within `depth` of the peak.
  std::vector<std::pair<double, double>> samples;
  const double r_unit = 1.0 / std::sqrt(def.abs_lambda());
  for (double r = 1e-6 * r_unit; r < 1e8 * r_unit; r *= 1.01) {
    const double v = log_abs(point_from_radius(def, r));
    samples.emplace_back(r, v);
    peak = std::max(peak, v);
    if (v < peak - depth - 100) break;
  }
  double r_end = samples.front().first;
  for (const auto& [r, v] : samples) {
    if (v > peak - depth) r_end = r;
  }
  if (r_end >= 1e8 * r_unit / 1.02) {
    throw Error(ErrorCode::NonNormalizable, "wavefunction does not decay as r -> infinity");
  }
  return {peak, r_end * 1.01};
}

}  // namespace qes
