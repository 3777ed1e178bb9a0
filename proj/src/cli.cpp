#include "qes/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qes/cdsi.hpp"
#include "qes/error.hpp"
#include "qes/figures.hpp"
#include "qes/serialize.hpp"
#include "qes/verify.hpp"

namespace qes {

namespace {

struct Params {
  int family = 1;
  int m = 1;
  std::string L = "0";
  std::string lambda = "1";
  std::string B = "1";
  int grid = 20000;
  double tol = 1e-6;
  std::string out;
  std::string format = "table";
  int k = 3;
  double perturb = 0;
  std::vector<double> coeffs;
};

struct SweepParams {
  std::vector<int> family{1, 2};
  std::vector<int> m{1, 2, 3, 4};
  std::vector<double> L{0, 1};
  std::vector<double> B{1, 4};
  std::vector<double> abs_lambda{1};
  int jobs = 0;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError: return 3;
    case ErrorCode::GridTooCoarse:
    case ErrorCode::NonNormalizable:
    case ErrorCode::PoleAtNode: return 1;
    default: return 2;
  }
}

double real(const std::string& name, const std::string& text) {
  if (auto q = parse_rational(text)) return to_double(*q);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidParameter, "--" + name + " expects a real number, got '" + text + "'");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
std::string list(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    if constexpr (std::is_same_v<T, double>) {
      s += fmt(v[i]);
    } else {
      s += v[i].str();
    }
  }
  return s + "]";
}

void emit(const Params& p, const std::string& text, std::ostream& out) {
  if (p.out.empty()) {
    out << text;
    return;
  }
  std::ofstream os(p.out, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + p.out + " for writing");
  os << text;
  if (!os) throw Error(ErrorCode::IoError, "write failed: " + p.out);
}

void check_format(const Params& p) {
  if (p.format != "table" && p.format != "csv" && p.format != "json") {
    throw Error(ErrorCode::InvalidParameter, "--format must be table, csv or json");
  }
}

using Rows = std::vector<std::pair<std::string, std::string>>;

std::string render_rows(const Rows& rows, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    os << "key,value\n";
    for (const auto& [k, v] : rows) {
      const bool quote = v.find(',') != std::string::npos;
      os << k << ',' << (quote ? "\"" + v + "\"" : v) << '\n';
    }
    return os.str();
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows) os << std::left << std::setw(int(width) + 2) << k << v << '\n';
  return os.str();
}

template <class T>
void psi_rows(Rows& rows, const std::string& name, const BasicWavefunctionForm<T>& psi) {
  auto text = [](const T& x) {
    if constexpr (std::is_same_v<T, double>) {
      return fmt(x);
    } else {
      return x.str();
    }
  };
  rows.emplace_back(name + ".a", text(psi.r_power));
  rows.emplace_back(name + ".b", text(psi.f_power));
  rows.emplace_back(name + ".exp_r2", list(psi.exp_r2));
  rows.emplace_back(name + ".exp_finv", list(psi.exp_finv));
  if (psi.has_prefactor()) rows.emplace_back(name + ".prefactor", list(psi.prefactor));
}

std::optional<TwoStateSolution<Rational>> exact_solution(Family family, const Params& p) {
  const auto L = parse_rational(p.L);
  const auto lambda = parse_rational(p.lambda);
  const auto B = parse_rational(p.B);
  if (!L || !lambda || !B) return std::nullopt;
  try {
    return general_two_state(family, p.m, *L, *B, *lambda);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IrrationalSqrt) return std::nullopt;
    throw;
  }
}

int cmd_solve(const Params& p, std::ostream& out) {
  check_format(p);
  const Family family = family_from_index(p.family);
  if (family == Family::Base) throw Error(ErrorCode::InvalidParameter, "family must be 1 or 2");
  const double L = real("L", p.L), lambda = real("lambda", p.lambda), B = real("B", p.B);
  const auto sol = general_two_state(family, p.m, L, B, lambda);
  const auto exact = exact_solution(family, p);

  if (p.format == "json") {
    Json j = to_json(sol);
    if (exact) j["exact"] = to_json(*exact);
    emit(p, j.dump(2) + "\n", out);
    return 0;
  }
  Rows rows;
  rows.emplace_back("family", std::string(family_name(family)));
  rows.emplace_back("m", std::to_string(p.m));
  rows.emplace_back("L", fmt(L));
  rows.emplace_back("lambda", fmt(lambda));
  rows.emplace_back("B2m", fmt(B));
  rows.emplace_back("A", fmt(sol.spec.A));
  for (std::size_t i = 0; i < sol.spec.B.size(); ++i) {
    rows.emplace_back("B" + std::to_string(i + 1), fmt(sol.spec.B[i]));
  }
  rows.emplace_back("E0", fmt(sol.E0));
  rows.emplace_back("E1", fmt(sol.E1));
  if (exact) {
    rows.emplace_back("A_exact", exact->spec.A.str());
    rows.emplace_back("B_exact", list(exact->spec.B));
    rows.emplace_back("E0_exact", exact->E0.str());
    rows.emplace_back("E1_exact", exact->E1.str());
  }
  rows.emplace_back("r0", fmt(sol.r0));
  if (exact) {
    psi_rows(rows, "psi0", exact->psi0);
    psi_rows(rows, "psi1", exact->psi1);
  } else {
    psi_rows(rows, "psi0", sol.psi0);
    psi_rows(rows, "psi1", sol.psi1);
  }
  emit(p, render_rows(rows, p.format), out);
  return 0;
}

VerifyConfig verify_config(const Params& p) {
  VerifyConfig c;
  c.family = family_from_index(p.family);
  if (c.family == Family::Base) throw Error(ErrorCode::InvalidParameter, "family must be 1 or 2");
  c.m = p.m;
  c.L = real("L", p.L);
  c.lambda = real("lambda", p.lambda);
  c.B2m = real("B", p.B);
  c.grid.grid_points = p.grid;
  c.grid.tolerance = p.tol;
  c.perturb = p.perturb;
  return c;
}

std::string render_report(const VerificationReport& rep, const std::string& format) {
  if (format == "json") return to_json(rep).dump(2) + "\n";
  std::ostringstream os;
  if (format == "csv") {
    os << "check,value,threshold,pass\n";
    for (const auto& c : rep.checks) {
      os << c.name << ',' << (std::isfinite(c.value) ? fmt(c.value) : "nan") << ','
         << fmt(c.threshold) << ',' << (c.pass ? "PASS" : "FAIL") << '\n';
    }
    return os.str();
  }
  os << "config " << rep.config_id;
  if (rep.config.perturb != 0) os << " (B1 perturbed by " << rep.config.perturb << ")";
  os << "\nE0 = " << fmt(rep.E0) << "  oracle " << fmt(rep.E0_oracle) << "\nE1 = " << fmt(rep.E1)
     << "  oracle " << fmt(rep.E1_oracle) << "\noracle grid N = " << rep.oracle_grid << "\n\n";
  os << std::left << std::setw(20) << "check" << std::setw(14) << "value" << std::setw(12)
     << "limit" << "result\n";
  for (const auto& c : rep.checks) {
    std::ostringstream v, t;
    v << std::setprecision(3) << c.value;
    t << (c.kind == CheckKind::Equals ? "== " : "<= ") << std::setprecision(3) << c.threshold;
    os << std::setw(20) << c.name << std::setw(14) << v.str() << std::setw(12) << t.str()
       << (c.pass ? "PASS" : "FAIL");
    if (!c.pass && !c.detail.empty()) os << "  " << c.detail;
    os << '\n';
  }
  os << (rep.pass() ? "all checks passed\n" : "verification FAILED\n");
  return os.str();
}

int cmd_verify(const Params& p, std::ostream& out) {
  check_format(p);
  const VerificationReport rep = verify(verify_config(p));
  emit(p, render_report(rep, p.format), out);
  return rep.pass() ? 0 : 1;
}

int cmd_figures(const Params& p, std::ostream& out) {
  const std::string dir = p.out.empty() ? "." : p.out;
  for (const auto& path : write_figures(reference_figures(), dir)) out << path << '\n';
  return 0;
}

int cmd_spectrum(const Params& p, std::ostream& out) {
  check_format(p);
  const Family family = family_from_index(p.family);
  const double L = real("L", p.L), lambda = real("lambda", p.lambda);
  PotentialSpec spec;
  if (!p.coeffs.empty()) {
    spec.family = family;
    spec.m = p.m;
    spec.L = L;
    spec.lambda = lambda;
    if (family == Family::Base) spec.m = 0;
    if (p.coeffs.size() != std::size_t(1 + 2 * spec.m)) {
      throw Error(ErrorCode::InvalidParameter,
                  "--coeffs expects A followed by B_1 .. B_2m (" + std::to_string(1 + 2 * spec.m) + " values)");
    }
    spec.A = p.coeffs[0];
    spec.B.assign(p.coeffs.begin() + 1, p.coeffs.end());
    validate(spec);
  } else {
    if (family == Family::Base) throw Error(ErrorCode::InvalidParameter, "base oscillator needs --coeffs A");
    spec = make_qes_spec(family, p.m, L, real("B", p.B), lambda);
  }
  if (!spec.B.empty()) spec.B[0] += p.perturb;
  GridOptions grid;
  grid.grid_points = p.grid;
  grid.tolerance = p.tol;
  const SpectrumEstimate est = lowest_eigenvalues(spec, p.k, grid);
  std::ostringstream os;
  if (p.format == "json") {
    Json j = to_json(est);
    j["spec"] = to_json(spec);
    os << j.dump(2) << '\n';
  } else {
    const char sep = p.format == "csv" ? ',' : ' ';
    if (p.format == "table") os << "# N = " << est.grid_points << ", x_max = " << fmt(est.x_max) << '\n';
    os << "n" << sep << "E" << sep << "E_raw" << sep << "richardson_error\n";
    for (std::size_t n = 0; n < est.eigenvalues.size(); ++n) {
      os << n << sep << fmt(est.eigenvalues[n]) << sep << fmt(est.raw_eigenvalues[n]) << sep
         << fmt(est.richardson_error[n]) << '\n';
    }
    if (est.truncation_warning && p.format == "table") os << "# warning: " << est.warning << '\n';
  }
  emit(p, os.str(), out);
  return 0;
}

struct SweepRow {
  VerifyConfig config;
  std::optional<VerificationReport> report;
  std::string error;
};

int cmd_sweep(const Params& p, const SweepParams& s, std::ostream& out) {
  check_format(p);
  std::vector<SweepRow> rows;
  for (int fam : s.family) {
    for (int m : s.m) {
      for (double L : s.L) {
        for (double B : s.B) {
          for (double a : s.abs_lambda) {
            VerifyConfig c;
            c.family = family_from_index(fam);
            if (c.family == Family::Base) throw Error(ErrorCode::InvalidParameter, "family must be 1 or 2");
            check_order(m);
            c.m = m;
            c.L = L;
            c.B2m = B;
            c.lambda = c.family == Family::First ? std::fabs(a) : -std::fabs(a);
            c.grid.grid_points = p.grid;
            c.grid.tolerance = p.tol;
            c.perturb = p.perturb;
            rows.push_back({c, std::nullopt, {}});
          }
        }
      }
    }
  }
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int jobs = std::max(1, std::min<int>(s.jobs > 0 ? s.jobs : hw, int(rows.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&rows, &next] {
      for (std::size_t i = next++; i < rows.size(); i = next++) {
        try {
          rows[i].report = verify(rows[i].config);
        } catch (const Error& e) {
          rows[i].error = std::string(to_string(e.code())) + ": " + e.what();
        }
      }
    }));
  }
  for (auto& w : workers) w.get();

  bool all = true;
  std::ostringstream os;
  if (p.format == "json") {
    Json j = Json::array();
    for (const auto& r : rows) {
      if (r.report) {
        j.push_back(to_json(*r.report));
      } else {
        j.push_back({{"config", config_id(r.config.family, r.config.m, r.config.L, r.config.lambda, r.config.B2m)},
                     {"error", r.error},
                     {"pass", false}});
      }
      all = all && r.report && r.report->pass();
    }
    os << j.dump(2) << '\n';
  } else {
    os << "config,E0,E1,r0,E0_oracle,E1_oracle,failed_checks,pass\n";
    for (const auto& r : rows) {
      const auto& c = r.config;
      os << config_id(c.family, c.m, c.L, c.lambda, c.B2m) << ',';
      if (!r.report) {
        os << ",,,,,\"" << r.error << "\",FAIL\n";
        all = false;
        continue;
      }
      std::string failed;
      for (const auto& ch : r.report->checks) {
        if (!ch.pass) failed += (failed.empty() ? "" : ";") + ch.name;
      }
      os << fmt(r.report->E0) << ',' << fmt(r.report->E1) << ',' << fmt(r.report->r0) << ','
         << fmt(r.report->E0_oracle) << ',' << fmt(r.report->E1_oracle) << ',' << failed << ','
         << (r.report->pass() ? "PASS" : "FAIL") << '\n';
      all = all && r.report->pass();
    }
  }
  emit(p, os.str(), out);
  return all ? 0 : 1;
}

void add_config(CLI::App* app, Params& p) {
  app->add_option("--family", p.family, "potential family (1: lambda > 0, 2: lambda < 0)")->capture_default_str();
  app->add_option("--m", p.m, "extension order")->capture_default_str();
  app->add_option("--L", p.L, "angular parameter L")->capture_default_str();
  app->add_option("--lambda", p.lambda, "curvature parameter")->capture_default_str();
  app->add_option("--B", p.B, "top coefficient B_2m")->capture_default_str();
}

void add_grid(CLI::App* app, Params& p) {
  app->add_option("--grid", p.grid, "oracle grid intervals")->capture_default_str();
  app->add_option("--tol", p.tol, "relative oracle tolerance")->capture_default_str();
}

void add_output(CLI::App* app, Params& p) {
  app->add_option("--out", p.out, "output file");
  app->add_option("--format", p.format, "table, csv or json")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-exactly solvable oscillators on constant-curvature spaces"};
  app.require_subcommand(1);
  Params p;
  SweepParams s;

  auto* solve = app.add_subcommand("solve", "closed-form ground and first excited states");
  add_config(solve, p);
  add_output(solve, p);

  auto* ver = app.add_subcommand("verify", "check a configuration against every invariant");
  add_config(ver, p);
  add_grid(ver, p);
  add_output(ver, p);
  ver->add_option("--perturb", p.perturb, "offset added to B_1");

  auto* fig = app.add_subcommand("figures", "write fig1..fig4 CSV tables");
  fig->add_option("--out", p.out, "output directory");

  auto* spec = app.add_subcommand("spectrum", "lowest oracle eigenvalues");
  add_config(spec, p);
  add_grid(spec, p);
  add_output(spec, p);
  spec->add_option("--k", p.k, "number of levels")->capture_default_str();
  spec->add_option("--perturb", p.perturb, "offset added to B_1");
  spec->add_option("--coeffs", p.coeffs, "A, B_1, ..., B_2m instead of the reduced potential")
      ->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "verify a grid of configurations in parallel");
  sweep->add_option("--family", s.family, "families")->delimiter(',')->capture_default_str();
  sweep->add_option("--m", s.m, "orders")->delimiter(',')->capture_default_str();
  sweep->add_option("--L", s.L, "L values")->delimiter(',')->capture_default_str();
  sweep->add_option("--B", s.B, "B_2m values")->delimiter(',')->capture_default_str();
  sweep->add_option("--lambda", s.abs_lambda, "|lambda| values, sign set by the family")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--jobs", s.jobs, "worker threads (0: all cores)");
  sweep->add_option("--perturb", p.perturb, "offset added to B_1");
  add_grid(sweep, p);
  add_output(sweep, p);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error code=UsageError: " << msg << '\n';
    return 2;
  }

  try {
    if (*solve) return cmd_solve(p, out);
    if (*ver) return cmd_verify(p, out);
    if (*fig) return cmd_figures(p, out);
    if (*spec) return cmd_spectrum(p, out);
    if (*sweep) return cmd_sweep(p, s, out);
  } catch (const Error& e) {
    err << "error code=" << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error code=Internal: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace qes
