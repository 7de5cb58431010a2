#pragma once

// Compact perturbations: the rank-one raise that lifts the norm of a section,
// and the check that a compact perturbation strictly raising the norm yields
// an attaining sum.

#include <span>

#include "normlab/attainment.hpp"
#include "normlab/operators.hpp"

namespace normlab {

struct RaiseCertificate {
  LpVector x0 = LpVector::zeros(0, Exponent::domain(2.0));
  LpVector y0 = LpVector::zeros(0, Exponent::domain(2.0));
  double eps = 0.0;
  double k_norm = 0.0;        // |eps/2| ||phi||_{p'} ||y0||_q
  double section_norm = 0.0;  // ||T||_N as estimated
  double t_x0 = 0.0;          // ||T x0||
  double raised = 0.0;        // ||(T+K) x0||
  /// k_norm < eps and raised >= section_norm + eps/4 > section_norm.
  bool holds = false;
};

struct RankOneRaise {
  OperatorSpec k;
  RaiseCertificate certificate;
};

/// K = (eps/2) phi(.) y0, with x0 a maximizer of the N-section, y0 = T x0 /
/// ||T x0|| and phi = Psi_p(x0) the norming functional of x0.
RankOneRaise rank_one_raise(const OperatorSpec& t, double eps, std::size_t n,
                            const SolverConfig& cfg);

enum class Premise { Holds, Fails };
std::string_view to_string(Premise p);

struct KoverVerdict {
  Premise premise = Premise::Fails;
  double gap = 0.0;  // extrapolated ||T+K|| - extrapolated ||T||
  SweepResult t_sweep;
  /// Attainment analysis of T+K; the expectation is Attained when the premise holds.
  AttainmentReport sum_report;
};

inline constexpr double kPremiseTol = 1e-3;

KoverVerdict kover_check(const OperatorSpec& t, const OperatorSpec& k,
                         std::span<const std::size_t> dims, const SolverConfig& cfg,
                         double premise_tol = kPremiseTol, double attain_tol = kClassificationTol);

}  // namespace normlab
