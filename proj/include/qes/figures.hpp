#pragma once

// Tabulated curves of the four reference plots: potentials for both
// families (m = 1 and m = 2) and the two closed-form eigenfunctions of the
// m = 1 potentials.

#include <string>
#include <vector>

#include "qes/potential.hpp"

namespace qes {

struct FigureTable {
  std::string name;     // fig1 .. fig4
  std::string caption;  // first line of the CSV
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

constexpr int kFigurePoints = 1000;

/// Radii of the tables: uniform on [0.05, 3] for lambda > 0, and
/// r_i = (i + 1) / (n + 1) r_max for lambda < 0.
std::vector<double> figure_radii(double lambda, int n = kFigurePoints);

/// V of the reduced potentials with the given orders, one column each.
FigureTable potential_figure(const std::string& name, Family family, const std::vector<int>& orders,
                             double L, double B2m, double lambda);
/// psi_0 and psi_1, each scaled to max |psi| = 1 on the table.
FigureTable wavefunction_figure(const std::string& name, Family family, int m, double L,
                                double B2m, double lambda);

std::vector<FigureTable> reference_figures();

/// '.' decimals, ',' separators, 17 significant digits, LF line ends.
std::string to_csv(const FigureTable& table);

/// Writes <dir>/<name>.csv for every table and returns the paths.
std::vector<std::string> write_figures(const std::vector<FigureTable>& tables, const std::string& dir);

}  // namespace qes
