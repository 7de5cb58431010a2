#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "normlab/kernels.hpp"
#include "normlab/lp_space.hpp"

namespace normlab {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

enum class Method {
  ClosedForm,
  BoydIteration,
  ProjectedAscent,
  BruteForce,
  EigenSpectral,
  StructureReduction,  // exact reduction to a one-dimensional search
};

std::string_view to_string(Method m);

struct SolverConfig {
  double tol = 1e-13;
  std::size_t max_iter = 20000;
  std::size_t restarts = 12;
  std::uint64_t seed = kDefaultSeed;
  double grid_resolution = 1e-2;
  Exec exec = Exec::Parallel;

  void validate() const;
};

/// Norm value backed by a witness. Iterative values are lower bounds: the
/// witness is a feasible unit vector that achieves them.
struct NormEstimate {
  double value = 0.0;
  std::optional<LpVector> witness;
  Method method = Method::ClosedForm;
  std::size_t iterations = 0;
  double stationarity_gap = 0.0;
  bool is_lower_bound = true;
  bool converged = true;
  /// Brute force only: largest objective change between neighbouring grid
  /// points, an O(resolution) bound on the pre-refinement error.
  double error_bound = 0.0;
};

}  // namespace normlab
