#include "normlab/perturbation.hpp"

#include <cmath>

#include "normlab/error.hpp"

namespace normlab {

std::string_view to_string(Premise p) {
  return p == Premise::Holds ? "PremiseHolds" : "PremiseFails";
}

RankOneRaise rank_one_raise(const OperatorSpec& t, double eps, std::size_t n,
                            const SolverConfig& cfg) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorKind::Precondition, "rank_one_raise: eps must be positive");
  }
  if (n == 0) throw Error(ErrorKind::Precondition, "rank_one_raise: N must be >= 1");
  const NormEstimate est = section_norm(t, n, cfg);
  if (!(est.value > 0.0) || !est.witness) {
    throw Error(ErrorKind::DegenerateInput, "rank_one_raise: T vanishes on the section");
  }
  const Exponent p = t.domain();
  const Exponent q = t.range();
  const LpVector x0 = normalize(est.witness->resized(n).with_exponent(p));
  const LpVector tx0 = apply(t, x0);
  const double t_x0 = lp_norm(tx0);
  if (!(t_x0 > 0.0)) {
    throw Error(ErrorKind::DegenerateInput, "rank_one_raise: T x0 vanishes");
  }
  std::vector<double> y0(tx0.coords().begin(), tx0.coords().end());
  for (double& v : y0) v /= t_x0;
  std::vector<double> phi = duality_map(x0.coords(), p.value());
  // ||phi||_{p'} = 1 up to rounding; pin it.
  const double phi_norm = lp_norm(phi, p.conjugate());
  for (double& v : phi) v /= phi_norm;

  RankOneRaise out{OperatorSpec::rank_one(phi, y0, eps / 2.0, p, q), {}};
  RaiseCertificate& c = out.certificate;
  c.x0 = x0;
  c.y0 = LpVector(y0, q);
  c.eps = eps;
  c.k_norm = rank_one_norm(out.k);
  c.section_norm = est.value;
  c.t_x0 = t_x0;
  c.raised = lp_norm(apply(t + out.k, x0));
  c.holds = c.k_norm < eps && c.raised >= c.section_norm + eps / 4.0 && c.raised > c.section_norm;
  return out;
}

KoverVerdict kover_check(const OperatorSpec& t, const OperatorSpec& k,
                         std::span<const std::size_t> dims, const SolverConfig& cfg,
                         double premise_tol, double attain_tol) {
  if (!k.compact_type()) {
    throw Error(ErrorKind::Precondition, "kover_check: K must be of compact type");
  }
  KoverVerdict v;
  const OperatorSpec sum = t + k;
  v.t_sweep = sweep_maximizing(t, dims, cfg);
  const SweepResult s_sweep = sweep_maximizing(sum, dims, cfg);
  v.gap = s_sweep.extrapolated_sup - v.t_sweep.extrapolated_sup;
  v.premise = v.gap > premise_tol ? Premise::Holds : Premise::Fails;
  v.sum_report = attainment_verdict(sum, s_sweep, attain_tol);
  return v;
}

}  // namespace normlab
