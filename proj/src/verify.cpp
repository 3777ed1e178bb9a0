#include "qes/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qes/cdsi.hpp"
#include "qes/error.hpp"
#include "qes/superpotential.hpp"

namespace qes {

namespace {

std::string number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

Check at_most(std::string name, double value, double threshold, std::string detail = {}) {
  Check c;
  c.name = std::move(name);
  c.kind = CheckKind::AtMost;
  c.value = value;
  c.threshold = threshold;
  c.pass = std::isfinite(value) && value <= threshold;
  c.detail = std::move(detail);
  return c;
}

Check equals(std::string name, int value, int expected, std::string detail = {}) {
  Check c;
  c.name = std::move(name);
  c.kind = CheckKind::Equals;
  c.value = value;
  c.threshold = expected;
  c.pass = value == expected;
  c.detail = std::move(detail);
  return c;
}

Check failed(std::string name, double threshold, const std::exception& e) {
  Check c;
  c.name = std::move(name);
  c.value = NAN;
  c.threshold = threshold;
  c.pass = false;
  c.detail = e.what();
  return c;
}

double scaled(double a, double b) { return std::fabs(a - b) / (1 + std::fabs(b)); }

}  // namespace

bool VerificationReport::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string config_id(Family family, int m, double L, double lambda, double B2m) {
  std::ostringstream os;
  os << family_name(family) << "_m" << m << "_L" << L << "_lambda" << lambda << "_B" << B2m;
  return os.str();
}

std::vector<double> sample_radii(double lambda, int n) {
  const double lo = 1e-3;
  const double hi = lambda > 0 ? 4.0 / std::sqrt(lambda) : (1 - 1e-6) / std::sqrt(-lambda);
  std::vector<double> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return out;
}

VerificationReport verify(const VerifyConfig& config) {
  const auto sol = general_two_state(config.family, config.m, config.L, config.B2m, config.lambda);
  VerificationReport rep;
  rep.config = config;
  rep.config_id = config_id(config.family, config.m, config.L, config.lambda, config.B2m);
  rep.E0 = sol.E0;
  rep.E1 = sol.E1;
  rep.r0 = sol.r0;

  PotentialSpec spec = sol.spec;
  spec.B[0] += config.perturb;
  const auto partner = partner_shift(sol.spec);
  PotentialSpec partner_spec = partner.spec;
  partner_spec.shift = partner.R;

  rep.checks.push_back(at_most("energy_gap",
                               std::fabs(sol.E1 - sol.E0 - sol.delta_e) / (1 + std::fabs(sol.E1)),
                               1e-12, "E1 - E0 - dE, dE = " + number(sol.delta_e)));

  const Deformation def(config.lambda);
  double ground = 0, raised = 0, pair = 0, wminus = 0;
  for (double r : sample_radii(config.lambda, config.riccati_points)) {
    // on the sphere (r, f) come from the angle so that f^2 = 1 + lambda r^2
    // holds to relative rounding even where f is small
    const RadialPoint p = config.lambda > 0 ? point_from_radius(def, r)
                                            : point_from_arc(def, arc_coordinate(def, r));
    const double v = eval_potential(spec, p);
    const double v2 = eval_potential(partner_spec, p);
    const SuperValue w = evaluate(sol.W, p);
    // W^2 and f W' cancel at small r when L = 0, so they enter the scale
    const double size = 1 + w.value * w.value + std::fabs(p.f * w.derivative);
    ground = std::max(ground, std::fabs(riccati_apply(sol.W, RiccatiSign::Minus, p) + sol.E0 - v) /
                                  (size + std::fabs(v)));
    raised = std::max(raised, std::fabs(riccati_apply(sol.W, RiccatiSign::Plus, p) - v2) /
                                  (size + std::fabs(v2)));
    pair = std::max(pair, std::fabs(generating_identity_residual(sol.pair, p)));
    if (std::fabs(r - sol.r0) > 1e-3 * sol.r0) {
      const double direct = evaluate(sol.pair.w_minus, p).value;
      wminus = std::max(wminus, scaled(w_minus_from_w_plus(sol.pair.w_plus, sol.delta_e, r), direct));
    }
  }
  rep.checks.push_back(at_most("riccati_ground", ground, 1e-10, "V = W^2 - f W' + E0"));
  rep.checks.push_back(at_most("riccati_partner", raised, 1e-10, "W^2 + f W' = V[partner] + R"));
  rep.checks.push_back(at_most("generating_pair", pair, 1e-10, "f W+' - W+ W- - dE"));
  rep.checks.push_back(at_most("w_minus_identity", wminus, 1e-10, "W- from (f W+' - dE) / W+"));

  const double tol = config.grid.tolerance > 0 ? config.grid.tolerance : 1e-6;
  try {
    SpectrumEstimate est;
    GridOptions grid = config.grid;
    std::vector<OracleState> states;
    for (int attempt = 0;; ++attempt) {
      try {
        states = lowest_states(spec, 3, grid, &est);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GridTooCoarse || attempt == config.grid_refinements) throw;
        grid.grid_points *= 2;
      }
    }
    rep.oracle_grid = grid.grid_points;
    rep.E0_oracle = states[0].energy;
    rep.E1_oracle = states[1].energy;
    rep.checks.push_back(at_most("oracle_E0", std::fabs(rep.E0_oracle - sol.E0) / std::max(1.0, std::fabs(sol.E0)),
                                 tol, "oracle " + number(rep.E0_oracle) + " at N = " + std::to_string(grid.grid_points)));
    rep.checks.push_back(at_most("oracle_E1", std::fabs(rep.E1_oracle - sol.E1) / std::max(1.0, std::fabs(sol.E1)),
                                 tol, "oracle " + number(rep.E1_oracle)));
    for (int n = 0; n < 3; ++n) {
      rep.checks.push_back(equals("oracle_nodes_" + std::to_string(n), count_nodes(states[n].psi), n));
    }
    rep.checks.push_back(equals("truncation", est.truncation_warning ? 1 : 0, 0, est.warning));
  } catch (const Error& e) {
    rep.checks.push_back(failed("oracle_E0", tol, e));
    rep.checks.push_back(failed("oracle_E1", tol, e));
  }

  rep.checks.push_back(at_most("schrodinger_psi0", schrodinger_residual(spec, sol.psi0, sol.E0), 1e-9));
  rep.checks.push_back(at_most("schrodinger_psi1", schrodinger_residual(spec, sol.psi1, sol.E1), 1e-9));

  rep.checks.push_back(equals("nodes_psi0", count_nodes(sol.psi0).count, 0));
  const NodeReport n1 = count_nodes(sol.psi1);
  rep.checks.push_back(equals("nodes_psi1", n1.count, 1));
  if (n1.count == 1) {
    rep.checks.push_back(at_most("node_location", std::fabs(n1.locations[0] - sol.r0), 1e-8,
                                 "r0 = " + number(sol.r0)));
  }

  try {
    check_normalizable(sol.psi0);
    check_normalizable(sol.psi1);
    rep.checks.push_back(at_most("orthogonality", std::fabs(normalized_overlap(sol.psi0, sol.psi1)), 1e-8));
  } catch (const Error& e) {
    rep.checks.push_back(failed("orthogonality", 1e-8, e));
  }
  return rep;
}

}  // namespace qes
