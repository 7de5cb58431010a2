#include "normlab/attainment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "normlab/error.hpp"

namespace normlab {

std::string_view to_string(WeakNullKind k) {
  switch (k) {
    case WeakNullKind::WeaklyNull: return "WeaklyNull";
    case WeakNullKind::NonWeaklyNull: return "NonWeaklyNull";
    case WeakNullKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Attained: return "Attained";
    case Verdict::NotAttained: return "NotAttained";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<std::size_t> default_structured_dims() { return {10, 100, 1000, 10000}; }

namespace {

void check_dims(std::span<const std::size_t> dims) {
  if (dims.empty()) throw Error(ErrorKind::Precondition, "sweep needs at least one dimension");
  if (dims.front() == 0) throw Error(ErrorKind::Precondition, "sweep dimensions must be >= 1");
  for (std::size_t k = 1; k < dims.size(); ++k) {
    if (dims[k] <= dims[k - 1]) {
      throw Error(ErrorKind::Precondition, "sweep dimensions must be strictly increasing");
    }
  }
}

// Runs solve(k) for every dimension in parallel. Exceptions cannot cross the
// OpenMP region, so they are parked per slot and the first one rethrown.
template <class Solve>
SweepResult run_sweep(std::span<const std::size_t> dims, const SolverConfig& cfg, Solve&& solve) {
  check_dims(dims);
  cfg.validate();
  SolverConfig inner = cfg;
  inner.exec = Exec::Serial;
  const std::size_t n = dims.size();
  std::vector<std::optional<NormEstimate>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  for_each_index(cfg.exec, n, [&](std::size_t k) {
    try {
      slots[k] = solve(dims[k], inner);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SweepResult s;
  s.dims.assign(dims.begin(), dims.end());
  for (std::size_t k = 0; k < n; ++k) {
    const NormEstimate& e = *slots[k];
    s.values.push_back(e.value);
    s.witnesses.push_back(e.witness ? e.witness->resized(dims[k])
                                    : LpVector::basis(1, Exponent::domain(2.0), dims[k]));
    s.methods.push_back(e.method);
    if (!e.converged) s.inconclusive = true;
  }
  finalize_sweep(s);
  return s;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k)
    if (!(v[k] > v[k - 1])) return false;
  return v.size() >= 2;
}

}  // namespace

void finalize_sweep(SweepResult& s) {
  const std::size_t n = s.values.size();
  // Sections are nested, so a witness from a smaller section stays feasible.
  for (std::size_t k = 1; k < n; ++k) {
    if (s.values[k] < s.values[k - 1]) {
      s.values[k] = s.values[k - 1];
      s.witnesses[k] = s.witnesses[k - 1].resized(s.dims[k]);
      s.methods[k] = s.methods[k - 1];
    }
  }
  if (n == 0) return;
  const double last = s.values.back();
  s.attained_at_finite_dim =
      n >= 2 && std::abs(last - s.values[n - 2]) <= kStabilizationTol * std::max(1.0, last);
  s.extrapolated_sup = last;
  if (!s.attained_at_finite_dim && n >= 3) {
    const double d1 = s.values[n - 2] - s.values[n - 3];
    const double d2 = last - s.values[n - 2];
    if (d1 > 0.0 && d2 > 0.0 && d2 < d1) s.extrapolated_sup = last + d2 * d2 / (d1 - d2);
  }
  s.extrapolated_sup = std::max(s.extrapolated_sup, *std::max_element(s.values.begin(), s.values.end()));
}

SweepResult sweep_maximizing(const OperatorSpec& t, std::span<const std::size_t> dims,
                             const SolverConfig& cfg) {
  return run_sweep(dims, cfg, [&](std::size_t n, const SolverConfig& inner) {
    return section_norm(t, n, inner);
  });
}

SweepResult sweep_maximizing(const PolySpec& p, std::span<const std::size_t> dims,
                             const SolverConfig& cfg) {
  return run_sweep(dims, cfg, [&](std::size_t n, const SolverConfig& inner) {
    return polynomial_section_norm(p, n, inner);
  });
}

// ---------------------------------------------------------------------------

namespace {

WeakNullClass grade(WeakLimitEstimate est, double tol) {
  WeakNullClass c;
  c.limit_norm = lp_norm(est.limit);
  c.estimate = std::move(est);
  if (c.limit_norm <= tol) {
    c.kind = WeakNullKind::WeaklyNull;
  } else if (c.limit_norm >= 2.0 * tol) {
    c.kind = WeakNullKind::NonWeaklyNull;
  } else {
    c.kind = WeakNullKind::Inconclusive;
  }
  return c;
}

}  // namespace

WeakNullClass classify_weak_null(const SequenceFamily& fam, double tol, std::size_t n_max) {
  return grade(weak_limit_estimate(fam, n_max, tol), tol);
}

WeakNullClass classify_weak_null(const SweepResult& sweep, double tol) {
  if (sweep.witnesses.size() < 4) {
    throw Error(ErrorKind::Precondition, "weak-null classification needs at least 4 members");
  }
  std::vector<LpVector> members;
  members.reserve(sweep.witnesses.size());
  for (const auto& w : sweep.witnesses) members.push_back(normalize(w));
  const SequenceFamily fam = SequenceFamily::recorded(std::move(members));
  return grade(weak_limit_estimate(fam, *fam.last_index(), tol), tol);
}

namespace {

template <class Magnitude>
AttainmentReport decide(const SweepResult& sweep, double tol, bool shortcut, Magnitude&& magnitude) {
  AttainmentReport r;
  r.evidence = sweep;
  r.limit_shortcut_enabled = shortcut;
  if (sweep.inconclusive) {
    r.verdict = Verdict::Inconclusive;
    r.rationale = "a section solve did not converge";
    return r;
  }
  if (sweep.witnesses.size() < 4) {
    r.verdict = Verdict::Inconclusive;
    r.rationale = "fewer than 4 sweep members";
    return r;
  }
  r.weak_null = classify_weak_null(sweep, tol);
  const WeakNullClass& cls = *r.weak_null;
  const double sup = sweep.extrapolated_sup;
  const double slack = tol * std::max(1.0, sup);

  if (shortcut) {
    if (cls.kind == WeakNullKind::NonWeaklyNull) {
      const LpVector w = normalize(cls.estimate.limit);
      const double check = magnitude(w);
      r.normalized_limit_check = check;
      if (std::abs(check - sup) <= slack) {
        r.verdict = Verdict::Attained;
        r.witness = w;
        r.rationale = "normalized weak limit of the maximizing witnesses reaches the supremum";
      } else {
        r.verdict = Verdict::Inconclusive;
        r.rationale = "normalized weak limit falls short of the supremum";
      }
      return r;
    }
    if (cls.kind == WeakNullKind::WeaklyNull && strictly_increasing(sweep.values) &&
        !sweep.attained_at_finite_dim) {
      r.verdict = Verdict::NotAttained;
      r.rationale = "values strictly increase and the witness family is weakly null";
      return r;
    }
    r.verdict = Verdict::Inconclusive;
    r.rationale = "no decisive evidence";
    return r;
  }

  if (cls.kind == WeakNullKind::NonWeaklyNull) {
    const LpVector w = normalize(cls.estimate.limit);
    r.normalized_limit_check = magnitude(w);
  }
  if (sweep.attained_at_finite_dim) {
    const LpVector& w = sweep.witnesses.back();
    if (std::abs(magnitude(w) - sup) <= slack) {
      r.verdict = Verdict::Attained;
      r.witness = w;
      r.rationale = "section values stabilise at a witness reaching the supremum";
      return r;
    }
  }
  if (strictly_increasing(sweep.values) && !sweep.attained_at_finite_dim) {
    r.verdict = Verdict::NotAttained;
    r.rationale = "values strictly increase without stabilising (limit shortcut disabled)";
    return r;
  }
  r.verdict = Verdict::Inconclusive;
  r.rationale = "no decisive evidence";
  return r;
}

}  // namespace

AttainmentReport attainment_verdict(const OperatorSpec& t, const SweepResult& sweep, double tol) {
  return decide(sweep, tol, true, [&](const LpVector& w) {
    return lp_norm(apply(t, w.with_exponent(t.domain())));
  });
}

AttainmentReport attainment_verdict(const PolySpec& p, const SweepResult& sweep, double tol) {
  const bool shortcut = p.degree() == 2 && p.scalar_valued();
  return decide(sweep, tol, shortcut, [&](const LpVector& w) { return magnitude(p, w); });
}

}  // namespace normlab
