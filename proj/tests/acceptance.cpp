// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Tolerances here are the pinned ones; they are not to be loosened.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "normlab/attainment.hpp"
#include "normlab/brezis_lieb.hpp"
#include "normlab/cli.hpp"
#include "normlab/norm_estimation.hpp"
#include "normlab/operators.hpp"
#include "normlab/perturbation.hpp"
#include "normlab/polynomials.hpp"
#include "normlab/scenarios.hpp"

using namespace normlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

const Exponent kP2 = Exponent::domain(2.0);
const Exponent kQ2 = Exponent::range(2.0);

Outcome pm_norm() {
  Outcome o;
  for (unsigned m : {3u, 4u, 5u}) {
    const double closed = pm_norm_closed_form(m);
    const double at_1e4 = pm_norm_numeric(m, 10000).value;
    o.require(std::abs(at_1e4 - closed) <= 1e-3, "m=" + std::to_string(m) + " off by " + num(at_1e4 - closed));
    double prev = -1.0;
    for (std::size_t n : {100u, 1000u, 10000u}) {
      const double v = pm_norm_numeric(m, n).value;
      o.require(v >= prev, "m=" + std::to_string(m) + " not monotone at N=" + std::to_string(n));
      o.require(v <= closed + 1e-9, "m=" + std::to_string(m) + " exceeds the norm at N=" + std::to_string(n));
      prev = v;
    }
  }
  return o;
}

Outcome vector_coupling() {
  Outcome o;
  const PolySpec vc = PolySpec::vector_coupling();
  const auto dims = default_structured_dims();
  const SweepResult s = sweep_maximizing(vc, dims, SolverConfig{});
  const AttainmentReport r = attainment_verdict(vc, s, kClassificationTol);
  for (double v : s.values) o.require(v <= 0.5 + 1e-9, "value " + num(v) + " above 1/2");
  o.require(std::abs(s.values.back() - 0.5) <= 1e-3, "N=1e4 value " + num(s.values.back()));
  o.require(r.verdict == Verdict::NotAttained, "verdict " + std::string(to_string(r.verdict)));
  o.require(r.weak_null && r.weak_null->kind == WeakNullKind::NonWeaklyNull, "witnesses not NonWeaklyNull");
  if (r.weak_null) {
    std::vector<double> d(r.weak_null->estimate.limit.coords().begin(), r.weak_null->estimate.limit.coords().end());
    d.resize(std::max<std::size_t>(d.size(), 1), 0.0);
    d[0] -= 1.0 / std::sqrt(2.0);
    o.require(lp_norm(d, 2.0) <= 1e-4, "weak limit off by " + num(lp_norm(d, 2.0)));
  }
  return o;
}

Outcome sharpness() {
  Outcome o;
  const OperatorSpec t = OperatorSpec::diagonal(DiagonalRule::unit_head_ratio(), kP2, kQ2);
  const OperatorSpec k = OperatorSpec::rank_one({1.0}, {1.0}, -1.0, kP2, kQ2);
  const SolverConfig cfg;
  const double nt = section_norm(t, 10000, cfg).value;
  const double ns = section_norm(t + k, 10000, cfg).value;
  o.require(std::abs(nt - 1.0) <= 1e-3, "||T|| = " + num(nt));
  o.require(std::abs(ns - 1.0) <= 1e-3, "||T+K|| = " + num(ns));
  const auto dims = default_structured_dims();
  const KoverVerdict kv = kover_check(t, k, dims, cfg);
  o.require(kv.premise == Premise::Fails, "premise holds with gap " + num(kv.gap));
  o.require(kv.sum_report.verdict == Verdict::NotAttained,
            "T+K verdict " + std::string(to_string(kv.sum_report.verdict)));
  return o;
}

Outcome rank_one_raise_check() {
  Outcome o;
  const OperatorSpec t = OperatorSpec::diagonal(DiagonalRule::ratio(), kP2, kQ2);
  const SolverConfig cfg;
  const RankOneRaise raise = rank_one_raise(t, 0.1, 40, cfg);
  const RaiseCertificate& c = raise.certificate;
  o.require(c.k_norm == 0.05, "||K|| = " + num(c.k_norm));
  o.require(c.raised >= 1.025, "||(T+K)x0|| = " + num(c.raised));
  const std::vector<std::size_t> dims{40, 100, 1000, 10000};
  const KoverVerdict kv = kover_check(t, raise.k, dims, cfg);
  o.require(kv.premise == Premise::Holds, "premise fails, gap " + num(kv.gap));
  o.require(kv.sum_report.verdict == Verdict::Attained,
            "verdict " + std::string(to_string(kv.sum_report.verdict)));
  if (kv.sum_report.witness) {
    const double achieved = lp_norm(apply(t + raise.k, *kv.sum_report.witness));
    o.require(std::abs(achieved - kv.sum_report.evidence.extrapolated_sup) <= kClassificationTol,
              "witness reaches " + num(achieved));
  } else {
    o.require(false, "no witness");
  }
  return o;
}

Outcome brezis_lieb() {
  Outcome o;
  // Disjoint supports, several exponents, diagonal T.
  for (double p : {2.0, 3.0, 1.5}) {
    const double a = 0.8;
    const double b = std::pow(1.0 - std::pow(a, p), 1.0 / p);
    const Exponent e = Exponent::domain(p);
    const SequenceFamily fam = SequenceFamily::two_spike(a, b, e);
    const OperatorSpec t = OperatorSpec::diagonal(DiagonalRule::unit_head_ratio(), e, Exponent::range(p));
    const LpVector u = weak_limit_estimate(fam, 2000, kClassificationTol).limit;
    double worst = 0.0;
    for (std::size_t n = 2; n <= 2000; ++n) {
      worst = std::max(worst, brezis_lieb_residual_u(fam, u, n).residual);
      worst = std::max(worst, brezis_lieb_residual_T(t, fam, u, n).residual);
    }
    o.require(worst <= 1e-12, "disjoint p=" + num(p) + " residual " + num(worst));
  }
  // Overlapping supports: normalize(e_1 + e_2/n).
  constexpr std::size_t kMax = 20000;
  std::vector<LpVector> members;
  for (std::size_t n = 2; n <= kMax; ++n) members.push_back(normalize(LpVector({1.0, 1.0 / double(n)}, kP2)));
  const SequenceFamily fam = SequenceFamily::recorded(std::move(members));
  const LpVector u = weak_limit_estimate(fam, kMax, kClassificationTol).limit;
  const OperatorSpec t = OperatorSpec::diagonal(DiagonalRule::unit_head_ratio(), kP2, kQ2);
  double worst_r = 0.0, worst_d = 0.0, prev = INFINITY;
  bool monotone = true;
  for (std::size_t n = 100; n <= kMax; ++n) {
    const auto ru = brezis_lieb_residual_u(fam, u, n);
    const auto rt = brezis_lieb_residual_T(t, fam, u, n);
    worst_r = std::max({worst_r, ru.residual, rt.residual});
    worst_d = std::max({worst_d, ru.cross_term, rt.cross_term});
    if (n <= 1000) {
      monotone = monotone && ru.residual < prev;
      prev = ru.residual;
    }
  }
  o.require(worst_r <= 1e-3, "overlapping residual " + num(worst_r));
  o.require(monotone, "overlapping residual not decreasing on 100..1000");
  o.require(worst_d <= 1e-3, "Delta_n " + num(worst_d));
  return o;
}

Outcome inequality() {
  Outcome o;
  const SampleGrid grid;  // [-100, 100], step 1e-3
  o.require(grid.size() >= 100000, "grid too coarse");
  for (double r : {1.5, 2.0, 3.0}) {
    for (double eps : {0.1, 0.5}) {
      const ScalarInequalityCheck c = scalar_ineq_constant(r, eps, grid);
      const std::string tag = "r=" + num(r) + " eps=" + num(eps);
      o.require(c.passed && std::isfinite(c.c_epsilon), tag + " no finite constant");
      o.require(c.max_violation <= 0.0, tag + " violation " + num(c.max_violation));
      if (r == 2.0) o.require(c.c_epsilon <= 2.0 + 1e-9, tag + " C = " + num(c.c_epsilon));
    }
  }
  return o;
}

Outcome quadratic_pipeline() {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed);
  const SolverConfig cfg;
  for (int k = 0; k < 25; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 5);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = 2.0 * uniform01(rng) - 1.0;
    const BanachEqualityReport be = banach_equality_check(a, cfg);
    const PolySpec poly = PolySpec::quadratic_form(a);
    const EigenDecomposition eig = jacobi_eigen(a, cfg);
    const double lam = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    const double at_x0 = std::abs(std::get<double>(eval(poly, be.witness)));
    const std::string tag = "matrix " + std::to_string(k);
    o.require(be.gap <= 1e-8, tag + " gap " + num(be.gap));
    o.require(std::abs(at_x0 - lam) <= 1e-8, tag + " |P(x0)| off by " + num(at_x0 - lam));
    const std::vector<std::size_t> dims{n, 2 * n, 4 * n, 8 * n};
    const AttainmentReport r = attainment_verdict(poly, sweep_maximizing(poly, dims, cfg), kClassificationTol);
    o.require(r.verdict == Verdict::Attained, tag + " verdict " + std::string(to_string(r.verdict)));
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed + 1);
  SolverConfig cfg;
  const std::vector<std::pair<double, double>> pairs{{2.0, 2.0}, {3.0, 1.5}, {1.5, 3.0}};
  double worst_boyd = 0.0, worst_ascent = 0.0;
  for (int k = 0; k < 50; ++k) {
    Matrix a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = uniform01(rng);
    for (const auto& [pv, qv] : pairs) {
      const Exponent p = Exponent::domain(pv);
      const Exponent q = Exponent::range(qv);
      const double brute = brute_force_norm(a, p, q, cfg).value;
      const double boyd = boyd_power_iteration(a, p, q, cfg).value;
      const double ascent =
          projected_ascent([&](std::span<const double> x) { return lp_norm(a.multiply(x), qv); }, 3, p, cfg).value;
      worst_boyd = std::max(worst_boyd, std::abs(boyd - brute));
      worst_ascent = std::max(worst_ascent, std::abs(ascent - brute));
    }
  }
  o.require(worst_boyd <= 1e-4, "Boyd vs brute force " + num(worst_boyd));
  o.require(worst_ascent <= 1e-4, "ascent vs brute force " + num(worst_ascent));

  // Closed forms in both regimes against the brute-force grid.
  double worst_closed = 0.0;
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 3);
    std::vector<double> d(n);
    for (double& v : d) v = 2.0 * uniform01(rng) - 1.0;
    for (const auto& [pv, qv] : pairs) {
      const Exponent p = Exponent::domain(pv);
      const Exponent q = Exponent::range(qv);
      const double closed = diagonal_norm(d, p, q).value;
      const double brute = n == 1 ? std::abs(d[0]) : brute_force_norm(Matrix::diagonal(d), p, q, cfg).value;
      worst_closed = std::max(worst_closed, std::abs(closed - brute));
    }
  }
  o.require(worst_closed <= 1e-4, "diagonal closed form vs brute force " + num(worst_closed));
  return o;
}

Outcome counterexample_guard() {
  Outcome o;
  const ScenarioReport r = run_scenario("pm-family", ScenarioOptions{});
  for (unsigned m : {3u, 4u, 5u}) {
    const auto& a = r.estimates.at("m" + std::to_string(m)).at("attainment");
    const std::string kind = a.at("weak_null").at("kind").get<std::string>();
    const std::string verdict = a.at("verdict").get<std::string>();
    o.require(kind == "NonWeaklyNull" && verdict == "NotAttained",
              "m=" + std::to_string(m) + " gave (" + kind + ", " + verdict + ")");
  }
  o.require(r.pass(), "scenario checks failed");
  return o;
}

std::string strip_volatile(const Json& doc) {
  Json copy = doc;
  copy.erase("timestamp");
  copy.erase("runtime_ms");
  return cli::render(copy, cli::Format::Json);
}

Outcome determinism() {
  Outcome o;
  const Json config = Json::object();
  const cli::Overrides ov;
  const cli::CommandResult a = cli::cmd_scenario("all", config, ov);
  const cli::CommandResult b = cli::cmd_scenario("all", config, ov);
  o.require(strip_volatile(a.document) == strip_volatile(b.document), "reports differ between runs");
  o.require(a.exit_code == cli::kExitPass, "scenario run failed");
  for (const auto& doc : {a.document, b.document}) {
    const std::string text = cli::render(doc, cli::Format::Json);
    const Json back = Json::parse(text);
    o.require(back == doc, "re-parsed report differs");
    o.require(cli::render(back, cli::Format::Json) == text, "re-rendered report differs");
  }
  Json sweep_cfg = Json::parse(R"({"operator":{"kind":"dense","matrix":[["1","2"],["0.5","3"]],"p":"3","q":"1.5"}})");
  cli::Overrides sov;
  sov.dims = std::vector<std::size_t>{2, 3, 4, 5};
  const auto s1 = cli::cmd_sweep(sweep_cfg, sov);
  const auto s2 = cli::cmd_sweep(sweep_cfg, sov);
  o.require(strip_volatile(s1.document) == strip_volatile(s2.document), "sweep reports differ between runs");
  o.require(Json::parse(cli::render(s1.document, cli::Format::Json)) == s1.document, "sweep report re-parse differs");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"P_m norm", pm_norm},
      {"vector coupling", vector_coupling},
      {"sharpness pair", sharpness},
      {"rank-one raise", rank_one_raise_check},
      {"Brezis-Lieb identities", brezis_lieb},
      {"scalar inequality", inequality},
      {"quadratic pipeline", quadratic_pipeline},
      {"oracle equivalence", oracle_equivalence},
      {"counterexample guard", counterexample_guard},
      {"determinism and round-trip", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2zu. %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
