#include "normlab/norm_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "normlab/error.hpp"

namespace normlab {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "ClosedForm";
    case Method::BoydIteration: return "BoydIteration";
    case Method::ProjectedAscent: return "ProjectedAscent";
    case Method::BruteForce: return "BruteForce";
    case Method::EigenSpectral: return "EigenSpectral";
    case Method::StructureReduction: return "StructureReduction";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw Error(ErrorKind::Precondition, "solver tol must be positive");
  if (restarts < 1) throw Error(ErrorKind::Precondition, "solver restarts must be >= 1");
  if (max_iter < 1) throw Error(ErrorKind::Precondition, "solver max_iter must be >= 1");
  if (!(grid_resolution > 0.0)) {
    throw Error(ErrorKind::Precondition, "grid_resolution must be positive");
  }
}

std::vector<double> restart_start(std::size_t dim, std::uint64_t seed, std::size_t restart) {
  std::vector<double> x(dim, 1.0);
  if (restart == 0) return x;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), 0x6e6f726du};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double& v : x) v = gauss(rng);
  return x;
}

double mixed_norm_ratio(const Matrix& a, std::span<const double> x, double p, double q) {
  const double nx = lp_norm(x, p);
  if (nx == 0.0) return 0.0;
  return lp_norm(a.multiply(x), q) / nx;
}

namespace {

struct Run {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  double gap = 0.0;
  bool converged = false;
};

std::vector<double> normalized(std::vector<double> x, double p) {
  const double n = lp_norm(x, p);
  if (n == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    if (!x.empty()) x[0] = 1.0;
    return x;
  }
  for (double& v : x) v /= n;
  return x;
}

// Index of the best run; strict improvement required so the lowest index wins
// ties whatever the execution order was.
std::size_t best_run(const std::vector<Run>& runs) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < runs.size(); ++k)
    if (runs[k].value > runs[best].value) best = k;
  return best;
}

Run boyd_run(const Matrix& a, std::vector<double> start, double p, double q,
             const SolverConfig& cfg) {
  const double p_conj = p / (p - 1.0);
  Run run;
  std::vector<double> x = normalized(std::move(start), p);
  double value = lp_norm(a.multiply(x), q);
  run.x = x;
  run.value = value;
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    run.iterations = it;
    const auto y = a.multiply(x);
    std::vector<double> s(y.size());
    if (q > 1.0) {
      s = duality_map(y, q);
    } else {
      // q = 1: subgradient of the l_1 norm, zero mapped to zero.
      for (std::size_t i = 0; i < y.size(); ++i) s[i] = (y[i] > 0.0) - (y[i] < 0.0);
    }
    const auto z = a.multiply_transpose(s);
    if (std::all_of(z.begin(), z.end(), [](double v) { return v == 0.0; })) {
      run.converged = true;
      run.gap = 0.0;
      break;
    }
    x = normalized(duality_map(z, p_conj), p);
    const double next = lp_norm(a.multiply(x), q);
    run.gap = std::abs(next - value) / std::max(value, 1e-300);
    value = next;
    if (value > run.value) {
      run.value = value;
      run.x = x;
    }
    if (run.gap <= cfg.tol) {
      run.converged = true;
      break;
    }
  }
  return run;
}

NormEstimate to_estimate(const Run& run, Method method, Exponent p) {
  NormEstimate e;
  e.value = run.value;
  e.witness = LpVector(run.x, p);
  e.method = method;
  e.iterations = run.iterations;
  e.stationarity_gap = run.gap;
  e.converged = run.converged;
  e.is_lower_bound = true;
  return e;
}

}  // namespace

NormEstimate boyd_power_iteration(const Matrix& a, Exponent p, Exponent q, const SolverConfig& cfg,
                                  std::span<const std::vector<double>> warm_starts) {
  cfg.validate();
  if (!(p.value() > 1.0)) {
    throw Error(ErrorKind::InvalidExponent, "Boyd iteration needs 1 < p < inf");
  }
  const std::size_t n = a.cols();
  if (n == 0 || a.max_abs() == 0.0) {
    NormEstimate e;
    e.value = 0.0;
    e.witness = LpVector::basis(1, p, std::max<std::size_t>(n, 1));
    e.method = Method::BoydIteration;
    return e;
  }
  const std::size_t total = cfg.restarts + warm_starts.size();
  std::vector<Run> runs(total);
  for_each_index(cfg.exec, total, [&](std::size_t k) {
    std::vector<double> start;
    if (k < cfg.restarts) {
      start = restart_start(n, cfg.seed, k);
    } else {
      start = warm_starts[k - cfg.restarts];
      start.resize(n, 0.0);
    }
    runs[k] = boyd_run(a, std::move(start), p.value(), q.value(), cfg);
  });
  NormEstimate e = to_estimate(runs[best_run(runs)], Method::BoydIteration, p);
  std::size_t iters = 0;
  for (const auto& r : runs) iters += r.iterations;
  e.iterations = iters;
  return e;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> sphere_direction(std::size_t dim, double theta, double phi) {
  if (dim == 1) return {1.0};
  if (dim == 2) return {std::cos(theta), std::sin(theta)};
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

struct AnglePoint {
  double theta;
  double phi;
  double value;
};

AnglePoint compass_refine(const std::function<double(double, double)>& f, AnglePoint start,
                          double step, bool two_angles, std::size_t max_iter) {
  AnglePoint cur = start;
  for (std::size_t it = 0; it < max_iter && step > 1e-13; ++it) {
    AnglePoint best = cur;
    const double moves[4][2] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
    const int count = two_angles ? 4 : 2;
    for (int m = 0; m < count; ++m) {
      const double t = cur.theta + moves[m][0];
      const double ph = cur.phi + moves[m][1];
      const double v = f(t, ph);
      if (v > best.value) best = {t, ph, v};
    }
    if (best.value > cur.value) {
      cur = best;
    } else {
      step *= 0.5;
    }
  }
  return cur;
}

}  // namespace

NormEstimate brute_force_norm(const Matrix& a, Exponent p, Exponent q, const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t dim = a.cols();
  if (dim > 3) {
    throw Error(ErrorKind::Refused, "brute-force oracle is limited to dimension <= 3");
  }
  NormEstimate e;
  e.method = Method::BruteForce;
  if (dim == 0) {
    e.value = 0.0;
    return e;
  }
  const double pv = p.value();
  const double qv = q.value();
  auto f = [&](double theta, double phi) {
    return mixed_norm_ratio(a, sphere_direction(dim, theta, phi), pv, qv);
  };
  if (dim == 1) {
    e.value = f(0.0, 0.0);
    e.witness = LpVector({1.0}, p);
    return e;
  }

  const double pi = std::numbers::pi;
  const double res = cfg.grid_resolution;
  // f(-x) = f(x): a half-turn of theta covers the circle; the sphere needs
  // theta in [0, pi] and a full turn of phi.
  const std::size_t n_theta =
      dim == 2 ? static_cast<std::size_t>(std::ceil(pi / res))
               : static_cast<std::size_t>(std::ceil(pi / res)) + 1;
  const std::size_t n_phi = dim == 2 ? 1 : static_cast<std::size_t>(std::ceil(2.0 * pi / res));
  const double d_theta = dim == 2 ? pi / static_cast<double>(n_theta)
                                  : pi / static_cast<double>(n_theta - 1);
  const double d_phi = dim == 2 ? 0.0 : 2.0 * pi / static_cast<double>(n_phi);

  std::vector<double> grid(n_theta * n_phi);
  for_each_index(cfg.exec, n_theta, [&](std::size_t i) {
    for (std::size_t j = 0; j < n_phi; ++j) {
      grid[i * n_phi + j] = f(static_cast<double>(i) * d_theta, static_cast<double>(j) * d_phi);
    }
  });

  auto at = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    if (dim == 2) {
      const auto n = static_cast<std::ptrdiff_t>(n_theta);
      return grid[static_cast<std::size_t>(((i % n) + n) % n)];
    }
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n_theta) - 1);
    const auto m = static_cast<std::ptrdiff_t>(n_phi);
    return grid[static_cast<std::size_t>(i) * n_phi + static_cast<std::size_t>(((j % m) + m) % m)];
  };

  std::vector<AnglePoint> peaks;
  double bound = 0.0;
  for (std::size_t i = 0; i < n_theta; ++i) {
    for (std::size_t j = 0; j < n_phi; ++j) {
      const auto ii = static_cast<std::ptrdiff_t>(i);
      const auto jj = static_cast<std::ptrdiff_t>(j);
      const double v = at(ii, jj);
      bool peak = true;
      for (std::ptrdiff_t di = -1; di <= 1; ++di) {
        for (std::ptrdiff_t dj = (dim == 2 ? 0 : -1); dj <= (dim == 2 ? 0 : 1); ++dj) {
          if (di == 0 && dj == 0) continue;
          const double w = at(ii + di, jj + dj);
          bound = std::max(bound, std::abs(w - v));
          if (w > v) peak = false;
        }
      }
      if (peak) {
        peaks.push_back({static_cast<double>(i) * d_theta, static_cast<double>(j) * d_phi, v});
      }
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const AnglePoint& x, const AnglePoint& y) { return x.value > y.value; });
  if (peaks.size() > 8) peaks.resize(8);

  AnglePoint best{0.0, 0.0, -1.0};
  std::size_t iters = 0;
  for (const auto& pk : peaks) {
    const AnglePoint r = compass_refine(f, pk, std::max(d_theta, d_phi), dim == 3, 100000);
    ++iters;
    if (r.value > best.value) best = r;
  }
  auto dir = sphere_direction(dim, best.theta, best.phi);
  const double nd = lp_norm(dir, pv);
  for (double& v : dir) v /= nd;
  e.value = lp_norm(a.multiply(dir), qv);
  e.witness = LpVector(std::move(dir), p);
  e.iterations = iters;
  e.error_bound = bound;
  e.stationarity_gap = 0.0;
  return e;
}

// ---------------------------------------------------------------------------

EigenDecomposition jacobi_eigen(const Matrix& input, const SolverConfig& cfg) {
  if (input.rows() != input.cols()) {
    throw Error(ErrorKind::InvalidShape, "eigensolver needs a square matrix");
  }
  if (!input.is_symmetric(1e-12 * std::max(1.0, input.max_abs()))) {
    throw Error(ErrorKind::Precondition, "eigensolver needs a symmetric matrix; symmetrize first");
  }
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);
  EigenDecomposition out;
  const double threshold = std::min(cfg.tol, 1e-12) * a.frobenius();
  constexpr std::size_t kMaxSweeps = 100;

  auto off = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  out.converged = false;
  for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
    out.off_diagonal = off();
    out.sweeps = sweep;
    if (out.off_diagonal <= threshold) {
      out.converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!out.converged) out.off_diagonal = off();

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

EigenExtremes symmetric_eig_extremes(const Matrix& a, const SolverConfig& cfg) {
  EigenExtremes ex;
  ex.full = jacobi_eigen(a, cfg);
  const std::size_t n = a.rows();
  if (n == 0) return ex;
  ex.lambda_min = ex.full.values.front();
  ex.lambda_max = ex.full.values.back();
  ex.v_min.resize(n);
  ex.v_max.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ex.v_min[i] = ex.full.vectors(i, 0);
    ex.v_max[i] = ex.full.vectors(i, n - 1);
  }
  return ex;
}

NormEstimate spectral_abs_max(const Matrix& a, const SolverConfig& cfg) {
  const EigenExtremes ex = symmetric_eig_extremes(a, cfg);
  NormEstimate e;
  e.method = Method::EigenSpectral;
  e.iterations = ex.full.sweeps;
  e.stationarity_gap = ex.full.off_diagonal;
  e.converged = ex.full.converged;
  e.is_lower_bound = false;
  const Exponent two = Exponent::domain(2.0);
  if (a.rows() == 0) {
    e.value = 0.0;
    return e;
  }
  if (std::abs(ex.lambda_min) > std::abs(ex.lambda_max)) {
    e.value = std::abs(ex.lambda_min);
    e.witness = LpVector(ex.v_min, two);
  } else {
    e.value = std::abs(ex.lambda_max);
    e.witness = LpVector(ex.v_max, two);
  }
  return e;
}

// ---------------------------------------------------------------------------

NormEstimate projected_ascent(const SphereObjective& objective, std::size_t dim, Exponent p,
                              const SolverConfig& cfg) {
  cfg.validate();
  if (dim == 0) throw Error(ErrorKind::Precondition, "projected ascent needs dim >= 1");
  const double pv = p.value();
  auto on_sphere = [&](std::span<const double> z) {
    std::vector<double> x(z.begin(), z.end());
    const double n = lp_norm(x, pv);
    for (double& v : x) v /= n;
    return objective(x);
  };

  std::vector<Run> runs(cfg.restarts);
  for_each_index(cfg.exec, cfg.restarts, [&](std::size_t r) {
    Run run;
    std::vector<double> z = normalized(restart_start(dim, cfg.seed, r), pv);
    double f = on_sphere(z);
    double step = 0.25;
    std::vector<double> g(dim), probe(dim), cand(dim);
    run.converged = false;
    std::size_t it = 0;
    for (; it < cfg.max_iter; ++it) {
      for (std::size_t i = 0; i < dim; ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(z[i]));
        probe = z;
        probe[i] = z[i] + h;
        const double fp = on_sphere(probe);
        probe[i] = z[i] - h;
        const double fm = on_sphere(probe);
        g[i] = (fp - fm) / (2.0 * h);
      }
      const double gn = lp_norm(g, 2.0);
      if (!(gn > 1e-15)) {
        run.converged = true;
        break;
      }
      bool moved = false;
      while (step >= 1e-14) {
        for (std::size_t i = 0; i < dim; ++i) cand[i] = z[i] + step * g[i] / gn;
        cand = normalized(cand, pv);
        const double fc = on_sphere(cand);
        if (fc > f) {
          run.gap = (fc - f) / std::max(std::abs(f), 1e-300);
          z = cand;
          f = fc;
          step = std::min(2.0 * step, 1.0);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) {
        run.converged = true;
        break;
      }
    }
    run.iterations = it;
    run.x = z;
    run.value = f;
    runs[r] = std::move(run);
  });

  const Run& best = runs[best_run(runs)];
  NormEstimate e = to_estimate(best, Method::ProjectedAscent, p);
  e.value = objective(best.x);
  std::size_t iters = 0;
  for (const auto& r : runs) iters += r.iterations;
  e.iterations = iters;
  return e;
}

}  // namespace normlab
