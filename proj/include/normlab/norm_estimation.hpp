#pragma once

// Mixed-norm maximisation engines on dense finite sections:
//   ||A||_{p->q} = max { ||Ax||_q : ||x||_p = 1 }.

#include <functional>
#include <span>
#include <vector>

#include "normlab/matrix.hpp"
#include "normlab/norm_estimate.hpp"

namespace normlab {

/// Deterministic start vector for restart `restart`: restart 0 is the all-ones
/// direction, later restarts are Gaussian draws seeded by (seed, restart).
std::vector<double> restart_start(std::size_t dim, std::uint64_t seed, std::size_t restart);

/// Boyd's power method x <- normalize_p(Psi_{p'}(A^T Psi_q(A x))), multi-start.
/// Extra warm starts run after the seeded restarts and never displace an equal
/// value found earlier.
NormEstimate boyd_power_iteration(const Matrix& a, Exponent p, Exponent q, const SolverConfig& cfg,
                                  std::span<const std::vector<double>> warm_starts = {});

/// Exhaustive angular grid over the p-sphere (dimension <= 3) plus compass
/// refinement of the best cells. Independent oracle for the engines above.
NormEstimate brute_force_norm(const Matrix& a, Exponent p, Exponent q, const SolverConfig& cfg);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
  std::size_t sweeps = 0;
  double off_diagonal = 0.0;
  bool converged = true;
};

/// Cyclic Jacobi rotations on a symmetric matrix.
EigenDecomposition jacobi_eigen(const Matrix& a, const SolverConfig& cfg);

struct EigenExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::vector<double> v_min;
  std::vector<double> v_max;
  EigenDecomposition full;
};

EigenExtremes symmetric_eig_extremes(const Matrix& a, const SolverConfig& cfg);

/// Largest |eigenvalue| with its eigenvector as an l_2 witness.
NormEstimate spectral_abs_max(const Matrix& a, const SolverConfig& cfg);

using SphereObjective = std::function<double(std::span<const double>)>;

/// Multi-start ascent of objective(x) over the unit p-sphere of R^dim using
/// central finite-difference gradients and renormalisation as retraction.
NormEstimate projected_ascent(const SphereObjective& objective, std::size_t dim, Exponent p,
                              const SolverConfig& cfg);

/// ||A x||_q for x normalised in l_p; shared objective of the engines above.
double mixed_norm_ratio(const Matrix& a, std::span<const double> x, double p, double q);

}  // namespace normlab
