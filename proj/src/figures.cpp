#include "qes/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qes/cdsi.hpp"
#include "qes/error.hpp"

namespace qes {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string params(Family family, double L, double B2m, double lambda) {
  return std::string(family_name(family)) + " lambda=" + fmt(lambda) + " L=" + fmt(L) +
         " B2m=" + fmt(B2m);
}

}  // namespace

std::vector<double> figure_radii(double lambda, int n) {
  std::vector<double> r(n);
  if (lambda > 0) {
    for (int i = 0; i < n; ++i) r[i] = 0.05 + (3.0 - 0.05) * i / (n - 1);
  } else {
    const double r_max = domain_max(lambda);
    for (int i = 0; i < n; ++i) r[i] = (i + 1.0) / (n + 1.0) * r_max;
  }
  return r;
}

FigureTable potential_figure(const std::string& name, Family family, const std::vector<int>& orders,
                             double L, double B2m, double lambda) {
  FigureTable t;
  t.name = name;
  t.caption = name + ": potential V(r), " + params(family, L, B2m, lambda) + ", m =";
  t.columns.push_back("r");
  std::vector<PotentialSpec> specs;
  for (int m : orders) {
    specs.push_back(make_qes_spec(family, m, L, B2m, lambda));
    t.caption += " " + std::to_string(m);
    t.columns.push_back("V_m" + std::to_string(m));
  }
  for (double r : figure_radii(lambda)) {
    std::vector<double> row{r};
    for (const auto& s : specs) row.push_back(eval_potential(s, r));
    t.rows.push_back(std::move(row));
  }
  return t;
}

FigureTable wavefunction_figure(const std::string& name, Family family, int m, double L,
                                double B2m, double lambda) {
  const auto sol = general_two_state(family, m, L, B2m, lambda);
  FigureTable t;
  t.name = name;
  t.caption = name + ": psi0 and psi1 scaled to max |psi| = 1, " +
              params(family, L, B2m, lambda) + ", m = " + std::to_string(m);
  t.columns = {"r", "psi0", "psi1"};
  const auto radii = figure_radii(lambda);
  const double s0 = profile(sol.psi0).log_peak;
  const double s1 = profile(sol.psi1).log_peak;
  std::vector<double> a, b;
  double pa = 0, pb = 0;
  for (double r : radii) {
    a.push_back(evaluate(sol.psi0, r, s0));
    b.push_back(evaluate(sol.psi1, r, s1));
    pa = std::max(pa, std::fabs(a.back()));
    pb = std::max(pb, std::fabs(b.back()));
  }
  for (std::size_t i = 0; i < radii.size(); ++i) t.rows.push_back({radii[i], a[i] / pa, b[i] / pb});
  return t;
}

std::vector<FigureTable> reference_figures() {
  return {
      potential_figure("fig1", Family::First, {1, 2}, 1, 1, 1),
      wavefunction_figure("fig2", Family::First, 1, 1, 1, 1),
      potential_figure("fig3", Family::Second, {1, 2}, 1, 1, -1),
      wavefunction_figure("fig4", Family::Second, 1, 1, 1, -1),
  };
}

std::string to_csv(const FigureTable& table) {
  std::string out = "# " + table.caption + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out += (i ? "," : "") + table.columns[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += fmt(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::vector<std::string> write_figures(const std::vector<FigureTable>& tables, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create directory " + dir + ": " + ec.message());
  std::vector<std::string> paths;
  for (const auto& t : tables) {
    const std::string path = (std::filesystem::path(dir) / (t.name + ".csv")).string();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    os << to_csv(t);
    os.close();
    if (!os) throw Error(ErrorCode::IoError, "write failed: " + path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace qes
