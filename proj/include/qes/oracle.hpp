#pragma once

// Independent numerical checks. In the arc coordinate x = int dr / f the
// deformed Hamiltonian becomes -d^2/dx^2 + V(r(x)) acting on u = sqrt(f) psi,
// which is discretized with the three-point stencil on a uniform grid with
// Dirichlet ends. Eigenvalues come from Sturm-sequence bisection.

#include <functional>
#include <string>
#include <vector>

#include "qes/curvature.hpp"
#include "qes/potential.hpp"
#include "qes/wavefunction.hpp"

namespace qes {

struct GridOptions {
  int grid_points = 20000;  // intervals N on [0, x_max]
  double tolerance = 1e-6;  // bound on richardson_error / (3 max(1, |E|)); <= 0 disables
  double x_max = 0;         // lambda > 0 only; 0 picks the truncation automatically
};

struct SpectrumEstimate {
  int grid_points = 0;
  double x_max = 0;
  std::vector<double> eigenvalues;       // Richardson-extrapolated from N and N/2
  std::vector<double> raw_eigenvalues;   // on the N grid
  std::vector<double> richardson_error;  // |E(N) - E(N/2)|
  bool truncation_warning = false;
  std::string warning;
};

using PotentialFunction = std::function<double(const RadialPoint&)>;

SpectrumEstimate lowest_eigenvalues(const PotentialSpec& spec, int k,
                                    const GridOptions& grid = {});
SpectrumEstimate lowest_eigenvalues(const Deformation& def, const PotentialFunction& v, int k,
                                    const GridOptions& grid = {});

/// Eigenvector of level n on the N grid, as psi = u / sqrt(f) sampled at
/// the interior points (normalized so that sum u^2 h = 1).
struct OracleState {
  double energy = 0;
  std::vector<double> r;
  std::vector<double> psi;
  std::vector<double> u;
};

std::vector<OracleState> lowest_states(const PotentialSpec& spec, int k,
                                       const GridOptions& grid = {},
                                       SpectrumEstimate* estimate = nullptr);

/// Interior sign changes of sampled values; entries with
/// |v| <= threshold * max|v| are skipped.
int count_nodes(const std::vector<double>& values, double threshold = 1e-8);

struct NodeReport {
  int count = 0;
  std::vector<double> locations;
};

/// Sign changes of a closed-form wavefunction on the part of the domain
/// where it is numerically nonzero; each node refined by bisection.
NodeReport count_nodes(const WavefunctionForm& psi, int samples = 4000);

/// max |pi^2 psi + (V - E) psi| / (1 + |E| |psi|) over `points` arc-uniform
/// samples, with psi peak-normalized.
double schrodinger_residual(const PotentialSpec& spec, const WavefunctionForm& psi, double E,
                            int points = 2000);

struct QuadratureResult {
  double value = 0;
  double error = 0;
};

/// int |psi|^2 dr with psi scaled by exp(-log_scale).
QuadratureResult scaled_norm(const WavefunctionForm& psi, double log_scale);

/// int |psi|^2 dr of the unnormalized form. Throws NonNormalizable when an
/// end of the domain makes the integral diverge.
double quadrature_norm(const WavefunctionForm& psi);

/// Throws NonNormalizable if the asymptotics at either end of the domain
/// are not square integrable.
void check_normalizable(const WavefunctionForm& psi);

/// <a, b> / (|a| |b|) by quadrature.
double normalized_overlap(const WavefunctionForm& a, const WavefunctionForm& b);

}  // namespace qes
