#include "qes/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "qes/error.hpp"

namespace qes {

namespace {

struct Tridiagonal {
  double h = 0;
  std::vector<double> x;     // interior nodes x_1 .. x_{N-1}
  std::vector<double> f;     // f at the nodes
  std::vector<double> diag;  // 2/h^2 + V
  double off = 0;            // -1/h^2
};

Tridiagonal build(const Deformation& def, const PotentialFunction& v, double x_max, int n) {
  Tridiagonal t;
  t.h = x_max / n;
  t.off = -1.0 / (t.h * t.h);
  t.x.resize(n - 1);
  t.f.resize(n - 1);
  t.diag.resize(n - 1);
  for (int i = 1; i < n; ++i) {
    const double x = i * t.h;
    const RadialPoint p = point_from_arc(def, x);
    t.x[i - 1] = x;
    t.f[i - 1] = p.f;
    t.diag[i - 1] = 2.0 / (t.h * t.h) + v(p);
  }
  return t;
}

// Number of eigenvalues strictly below sigma (Sturm sequence of the LDL^T
// factorization of T - sigma).
int sturm_count(const Tridiagonal& t, double sigma) {
  const double e2 = t.off * t.off;
  const double tiny = std::numeric_limits<double>::min() * 1e10 + std::fabs(t.off) * 1e-300;
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    q = t.diag[i] - sigma - (i == 0 ? 0.0 : e2 / q);
    if (q == 0) q = -tiny;
    if (q < 0) ++count;
  }
  return count;
}

std::vector<double> bisect_lowest(const Tridiagonal& t, int k) {
  if (static_cast<std::size_t>(k) > t.diag.size()) {
    throw Error(ErrorCode::InvalidParameter, "more levels requested than grid points");
  }
  const double lo0 = *std::min_element(t.diag.begin(), t.diag.end()) - 2 * std::fabs(t.off);
  double hi0 = std::max(1.0, std::fabs(lo0));
  while (sturm_count(t, hi0) < k) hi0 = hi0 * 2 + 1;

  std::vector<double> out;
  for (int n = 0; n < k; ++n) {
    double lo = out.empty() ? lo0 : out.back() - 1e-300;
    double hi = hi0;
    for (int it = 0; it < 400; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(t, mid) > n) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

// Solves (T - sigma) y = b with partial pivoting.
std::vector<double> tridiagonal_solve(const Tridiagonal& t, double sigma, std::vector<double> b) {
  const std::size_t n = t.diag.size();
  std::vector<double> d(n), du(n, 0.0), du2(n, 0.0), dl(n, t.off);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = t.diag[i] - sigma;
    if (i + 1 < n) du[i] = t.off;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::fabs(d[i]) >= std::fabs(dl[i])) {
      const double fact = dl[i] / (d[i] == 0 ? 1e-300 : d[i]);
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
      dl[i] = 0;
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - fact * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = tmp;
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= fact * b[i];
    }
  }
  std::vector<double> y(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    if (ii + 1 < n) s -= du[ii] * y[ii + 1];
    if (ii + 2 < n) s -= du2[ii] * y[ii + 2];
    y[ii] = s / (d[ii] == 0 ? 1e-300 : d[ii]);
  }
  return y;
}

std::vector<double> inverse_iteration(const Tridiagonal& t, double energy) {
  const std::size_t n = t.diag.size();
  const double sigma = energy - 1e-10 * std::max(1.0, std::fabs(energy));
  std::vector<double> y(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) y[i] = 1.0 + 0.1 * std::sin(0.37 * static_cast<double>(i));
  for (int it = 0; it < 4; ++it) {
    y = tridiagonal_solve(t, sigma, std::move(y));
    double norm = 0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm * t.h);
    for (double& v : y) v /= norm;
  }
  // fix the overall sign: positive near the origin
  for (double v : y) {
    if (std::fabs(v) > 1e-6) {
      if (v < 0) {
        for (double& w : y) w = -w;
      }
      break;
    }
  }
  return y;
}

// Smallest x beyond which V stays above `energy` and the WKB decay exponent
// int sqrt(V - E) dx from there to x_max reaches `target`.
bool truncation_adequate(const Deformation& def, const PotentialFunction& v, double x_max,
                         double energy, double target) {
  const int n = 4000;
  const double h = x_max / n;
  double integral = 0;
  for (int i = n; i >= 1; --i) {
    const double x = (i - 0.5) * h;
    const double excess = v(point_from_arc(def, x)) - energy;
    if (excess <= 0) break;
    integral += std::sqrt(excess) * h;
  }
  return integral >= target;
}

double choose_x_max(const Deformation& def, const PotentialFunction& v, int k, bool& capped) {
  const double unit = 1.0 / std::sqrt(def.abs_lambda());
  const double cap = 60.0 * unit;
  double x = 0.25 * unit;
  capped = false;
  while (true) {
    const Tridiagonal coarse = build(def, v, x, 2000);
    const double top = bisect_lowest(coarse, k).back();
    if (truncation_adequate(def, v, x, top, 40.0)) return x;
    if (x >= cap) {
      capped = true;
      return cap;
    }
    x = std::min(cap, x * 1.25);
  }
}

struct Solved {
  SpectrumEstimate estimate;
  Tridiagonal fine;
};

Solved solve(const Deformation& def, const PotentialFunction& v, int k, const GridOptions& grid) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "number of levels k must be >= 1");
  if (grid.grid_points < 200) {
    throw Error(ErrorCode::InvalidParameter, "grid_points must be >= 200");
  }
  const int n = grid.grid_points - grid.grid_points % 2;
  Solved out;
  SpectrumEstimate& est = out.estimate;
  est.grid_points = n;
  bool capped = false;
  if (!def.hyperbolic()) {
    est.x_max = def.arc_max();
  } else if (grid.x_max > 0) {
    est.x_max = grid.x_max;
  } else {
    est.x_max = choose_x_max(def, v, k, capped);
  }

  out.fine = build(def, v, est.x_max, n);
  const Tridiagonal half = build(def, v, est.x_max, n / 2);
  est.raw_eigenvalues = bisect_lowest(out.fine, k);
  const std::vector<double> coarse = bisect_lowest(half, k);
  for (int i = 0; i < k; ++i) {
    const double diff = est.raw_eigenvalues[i] - coarse[i];
    est.eigenvalues.push_back(est.raw_eigenvalues[i] + diff / 3.0);
    est.richardson_error.push_back(std::fabs(diff));
  }
  if (grid.tolerance > 0) {
    for (int i = 0; i < k; ++i) {
      const double scale = std::max(1.0, std::fabs(est.eigenvalues[i]));
      // |E(N) - E(N/2)| / 3 estimates the discretization error of E(N)
      if (est.richardson_error[i] / 3.0 > grid.tolerance * scale) {
        throw Error(ErrorCode::GridTooCoarse,
                    "level " + std::to_string(i) + " Richardson error " +
                        to_string(est.richardson_error[i]) + " exceeds tolerance at N = " +
                        std::to_string(n));
      }
    }
  }
  if (capped) {
    est.truncation_warning = true;
    est.warning = "potential not confining enough; truncated at x_max = " + to_string(est.x_max);
  }
  if (def.hyperbolic() && !est.truncation_warning) {
    // mass in the outer 5% of the box
    const std::size_t m = out.fine.diag.size();
    const std::size_t outer = m - m / 20;
    for (int i = 0; i < k; ++i) {
      const std::vector<double> u = inverse_iteration(out.fine, est.raw_eigenvalues[i]);
      double tail = 0;
      for (std::size_t j = outer; j < m; ++j) tail += u[j] * u[j] * out.fine.h;
      if (tail > 1e-12) {
        est.truncation_warning = true;
        est.warning = "level " + std::to_string(i) + " carries mass " + to_string(tail) +
                      " near x_max = " + to_string(est.x_max);
        break;
      }
    }
  }
  return out;
}

PotentialFunction potential_function(const PotentialSpec& spec) {
  validate(spec);
  return [spec](const RadialPoint& p) { return eval_potential(spec, p); };
}

}  // namespace

SpectrumEstimate lowest_eigenvalues(const Deformation& def, const PotentialFunction& v, int k,
                                    const GridOptions& grid) {
  return solve(def, v, k, grid).estimate;
}

SpectrumEstimate lowest_eigenvalues(const PotentialSpec& spec, int k, const GridOptions& grid) {
  return lowest_eigenvalues(Deformation(spec.lambda), potential_function(spec), k, grid);
}

std::vector<OracleState> lowest_states(const PotentialSpec& spec, int k, const GridOptions& grid,
                                       SpectrumEstimate* estimate) {
  const Deformation def(spec.lambda);
  const Solved s = solve(def, potential_function(spec), k, grid);
  if (estimate) *estimate = s.estimate;
  std::vector<OracleState> out;
  for (int i = 0; i < k; ++i) {
    OracleState st;
    st.energy = s.estimate.eigenvalues[i];
    st.u = inverse_iteration(s.fine, s.estimate.raw_eigenvalues[i]);
    st.r.resize(st.u.size());
    st.psi.resize(st.u.size());
    for (std::size_t j = 0; j < st.u.size(); ++j) {
      st.r[j] = radius_from_arc(def, s.fine.x[j]);
      st.psi[j] = st.u[j] / std::sqrt(s.fine.f[j]);
    }
    out.push_back(std::move(st));
  }
  return out;
}

int count_nodes(const std::vector<double>& values, double threshold) {
  double peak = 0;
  for (double v : values) peak = std::max(peak, std::fabs(v));
  const double floor = threshold * peak;
  int count = 0;
  int last = 0;
  for (double v : values) {
    if (std::fabs(v) <= floor) continue;
    const int sign = v > 0 ? 1 : -1;
    if (last != 0 && sign != last) ++count;
    last = sign;
  }
  return count;
}

NodeReport count_nodes(const WavefunctionForm& psi, int samples) {
  const Deformation def(psi.lambda);
  const WaveProfile prof = profile(psi);
  NodeReport out;
  if (!psi.has_prefactor()) return out;  // the envelope is positive
  const double x_end = def.hyperbolic() ? arc_coordinate(def, prof.r_end) : def.arc_max();
  auto p_at = [&](double r) { return prefactor_value(psi, r); };
  double prev_r = radius_from_arc(def, x_end * 0.5 / samples);
  double prev = p_at(prev_r);
  for (int i = 1; i < samples; ++i) {
    const double r = radius_from_arc(def, x_end * (i + 0.5) / samples);
    const double cur = p_at(r);
    if (cur == 0 || (prev != 0 && (cur > 0) != (prev > 0))) {
      double lo = prev_r, hi = r;
      const bool lo_pos = prev > 0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double pm = p_at(mid);
        if (pm == 0) {
          lo = hi = mid;
          break;
        }
        if ((pm > 0) == lo_pos) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      out.locations.push_back(0.5 * (lo + hi));
      ++out.count;
    }
    prev = cur;
    prev_r = r;
  }
  return out;
}

double schrodinger_residual(const PotentialSpec& spec, const WavefunctionForm& psi, double E,
                            int points) {
  const Deformation def(spec.lambda);
  const WaveProfile prof = profile(psi);
  const double x_end = def.hyperbolic() ? arc_coordinate(def, prof.r_end) : def.arc_max();
  double worst = 0;
  for (int i = 0; i < points; ++i) {
    const RadialPoint p = point_from_arc(def, x_end * (i + 0.5) / points);
    const WaveSample s = sample(psi, p, prof.log_peak);
    const double h = deformed_kinetic(s, p, spec.lambda) + (eval_potential(spec, p) - E) * s.value;
    worst = std::max(worst, std::fabs(h) / (1.0 + std::fabs(E) * std::fabs(s.value)));
  }
  return worst;
}

void check_normalizable(const WavefunctionForm& psi) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::NonNormalizable, "wavefunction not square integrable " + what);
  };
  std::vector<double> c = psi.exp_r2, d = psi.exp_finv, p = psi.prefactor;
  trim_trailing_zeros(c);
  trim_trailing_zeros(d);
  trim_trailing_zeros(p);
  std::size_t first = 0;
  while (first < p.size() && p[first] == 0) ++first;
  if (2 * (psi.r_power + 2.0 * static_cast<double>(first)) <= -1) fail("at r -> 0");
  if (psi.lambda > 0) {
    if (!c.empty()) {
      if (c.back() > 0) fail("as r -> infinity");
    } else {
      const double deg = p.empty() ? 0.0 : static_cast<double>(p.size() - 1);
      if (2 * (psi.r_power + psi.f_power + 2 * deg) >= -1) fail("as r -> infinity");
    }
  } else {
    if (!d.empty()) {
      if (d.back() > 0) fail("at the domain edge");
    } else if (psi.f_power <= -1) {
      fail("at the domain edge");
    }
  }
}

QuadratureResult scaled_norm(const WavefunctionForm& psi, double log_scale) {
  const Deformation def(psi.lambda);
  const WaveProfile prof = profile(psi);
  const double x_end = def.hyperbolic() ? arc_coordinate(def, prof.r_end) : def.arc_max();
  // dr = f dx
  auto integrand = [&](double x) {
    if (!(x > 0 && x < x_end)) return 0.0;
    const RadialPoint p = point_from_arc(def, x);
    const double v = sample(psi, p, log_scale).value;
    return v * v * p.f;
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  QuadratureResult out;
  out.value = integrator.integrate(integrand, 0.0, x_end, 1e-14, &out.error);
  return out;
}

double quadrature_norm(const WavefunctionForm& psi) {
  check_normalizable(psi);
  const WaveProfile prof = profile(psi);
  const QuadratureResult q = scaled_norm(psi, prof.log_peak);
  return q.value * std::exp(2 * prof.log_peak);
}

double normalized_overlap(const WavefunctionForm& a, const WavefunctionForm& b) {
  if (a.lambda != b.lambda) {
    throw Error(ErrorCode::InvalidParameter, "overlap of forms with different lambda");
  }
  check_normalizable(a);
  check_normalizable(b);
  const Deformation def(a.lambda);
  const WaveProfile pa = profile(a), pb = profile(b);
  const double x_end = def.hyperbolic() ? arc_coordinate(def, std::max(pa.r_end, pb.r_end))
                                        : def.arc_max();
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto integral = [&](auto&& fn) { return integrator.integrate(fn, 0.0, x_end, 1e-14); };
  auto inner = [&](const WavefunctionForm& p, double sp, const WavefunctionForm& q, double sq) {
    return integral([&](double x) {
      if (!(x > 0 && x < x_end)) return 0.0;
      const RadialPoint pt = point_from_arc(def, x);
      return sample(p, pt, sp).value * sample(q, pt, sq).value * pt.f;
    });
  };
  const double ab = inner(a, pa.log_peak, b, pb.log_peak);
  const double aa = inner(a, pa.log_peak, a, pa.log_peak);
  const double bb = inner(b, pb.log_peak, b, pb.log_peak);
  return ab / std::sqrt(aa * bb);
}

}  // namespace qes
