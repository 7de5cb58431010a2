#pragma once

// Maximizing-sequence sweeps over nested finite sections, weak-null
// classification of the witnesses, and evidence-graded attainment verdicts.
//
// Verdicts are numerical evidence, never proofs. NotAttained means the sweep
// values keep increasing and the witness family carries no mass on the fixed
// coordinates; Attained means a concrete witness reaches the extrapolated
// supremum within tolerance.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normlab/lp_space.hpp"
#include "normlab/norm_estimate.hpp"
#include "normlab/operators.hpp"
#include "normlab/polynomials.hpp"

namespace normlab {

inline constexpr double kClassificationTol = 1e-4;
inline constexpr double kStabilizationTol = 1e-12;

struct SweepResult {
  std::vector<std::size_t> dims;
  std::vector<double> values;
  std::vector<LpVector> witnesses;
  std::vector<Method> methods;
  double extrapolated_sup = 0.0;
  bool attained_at_finite_dim = false;
  /// Some section solve did not converge; verdicts refuse to conclude.
  bool inconclusive = false;
};

/// Nondecreasing envelope, stabilisation flag and Aitken extrapolation over
/// the last three values. Shared by both sweep flavours.
void finalize_sweep(SweepResult& sweep);

SweepResult sweep_maximizing(const OperatorSpec& t, std::span<const std::size_t> dims,
                             const SolverConfig& cfg);
SweepResult sweep_maximizing(const PolySpec& p, std::span<const std::size_t> dims,
                             const SolverConfig& cfg);

enum class WeakNullKind { WeaklyNull, NonWeaklyNull, Inconclusive };
std::string_view to_string(WeakNullKind k);

struct WeakNullClass {
  WeakNullKind kind = WeakNullKind::Inconclusive;
  WeakLimitEstimate estimate;
  double limit_norm = 0.0;
};

/// WeaklyNull when the estimated limit has norm <= tol, NonWeaklyNull when it
/// is >= 2 tol, Inconclusive in between.
WeakNullClass classify_weak_null(const SequenceFamily& fam, double tol, std::size_t n_max = 1000);
WeakNullClass classify_weak_null(const SweepResult& sweep, double tol);

enum class Verdict { Attained, NotAttained, Inconclusive };
std::string_view to_string(Verdict v);

struct AttainmentReport {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<LpVector> witness;
  std::optional<WeakNullClass> weak_null;
  /// ||T(u/||u||)|| (or |P(u/||u||)|) when a non-null limit was found.
  std::optional<double> normalized_limit_check;
  /// Whether "non-weakly-null maximizing sequence implies attainment" was
  /// allowed to decide. Disabled for polynomials of degree >= 3 and for
  /// vector-valued polynomials, where counterexamples exist.
  bool limit_shortcut_enabled = true;
  std::string rationale;
  SweepResult evidence;
};

AttainmentReport attainment_verdict(const OperatorSpec& t, const SweepResult& sweep, double tol);
AttainmentReport attainment_verdict(const PolySpec& p, const SweepResult& sweep, double tol);

/// Default dimension sweep for structured (closed-form) sections.
std::vector<std::size_t> default_structured_dims();

}  // namespace normlab
