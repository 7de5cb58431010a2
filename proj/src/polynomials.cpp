#include "normlab/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "normlab/error.hpp"
#include "normlab/norm_estimation.hpp"

namespace normlab {

namespace {

const Exponent kTwo = Exponent::domain(2.0);

// Golden-section maximisation of a unimodal function on [lo, hi].
template <class F>
std::pair<double, std::size_t> golden_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  std::size_t iters = 0;
  while (b - a > tol && iters < 500) {
    ++iters;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return {0.5 * (a + b), iters};
}

LpVector two_spike_vector(double t, std::size_t n) {
  std::vector<double> x(n, 0.0);
  x[0] = std::sqrt(t);
  x[n - 1] = std::sqrt(1.0 - t);
  return {std::move(x), kTwo};
}

}  // namespace

PolySpec PolySpec::quadratic_form(const Matrix& a, DiagonalRule diagonal) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidShape, "quadratic form needs a square matrix");
  PolySpec p(Shape::QuadraticForm, 2);
  p.matrix_ = std::make_shared<const Matrix>(a.symmetrized());
  p.diagonal_ = std::make_shared<const DiagonalRule>(std::move(diagonal));
  return p;
}

PolySpec PolySpec::pm_family(unsigned m) {
  if (m < 3) throw Error(ErrorKind::InvalidDegree, "the P_m family needs m >= 3");
  PolySpec p(Shape::PmFamily, m);
  p.matrix_ = std::make_shared<const Matrix>();
  p.diagonal_ = std::make_shared<const DiagonalRule>(DiagonalRule::zero());
  return p;
}

PolySpec PolySpec::vector_coupling() {
  PolySpec p(Shape::VectorCoupling, 2);
  p.matrix_ = std::make_shared<const Matrix>();
  p.diagonal_ = std::make_shared<const DiagonalRule>(DiagonalRule::zero());
  return p;
}

bool PolySpec::completely_continuous() const {
  return shape_ == Shape::QuadraticForm && diagonal_->vanishes_at_infinity();
}

std::string PolySpec::describe() const {
  std::ostringstream os;
  switch (shape_) {
    case Shape::QuadraticForm:
      os << "quadratic form " << matrix_->rows() << "x" << matrix_->cols();
      if (!diagonal_->is_zero()) os << " + diag[" << diagonal_->name() << "]";
      break;
    case Shape::PmFamily: os << "P_" << degree_; break;
    case Shape::VectorCoupling: os << "vector coupling"; break;
  }
  return os.str();
}

PolySpec perturb(const PolySpec& p, const PolySpec& k) {
  if (p.shape() != PolySpec::Shape::QuadraticForm || k.shape() != PolySpec::Shape::QuadraticForm) {
    throw Error(ErrorKind::InvalidShape, "perturbation is defined for quadratic forms");
  }
  if (!k.completely_continuous()) {
    throw Error(ErrorKind::Precondition, "perturbation must be completely continuous");
  }
  Matrix km = k.matrix();
  const DiagonalRule& kd = k.diagonal();
  if (!kd.is_zero()) {
    if (kd.kind() != DiagonalRule::Kind::Table) {
      throw Error(ErrorKind::InvalidShape, "perturbation diagonal must be a finite table");
    }
    km = km + Matrix::diagonal(kd.table_values());
  }
  return PolySpec::quadratic_form(p.matrix() + km, p.diagonal());
}

PolyValue eval(const PolySpec& p, const LpVector& x) {
  const auto c = x.coords();
  switch (p.shape()) {
    case PolySpec::Shape::QuadraticForm: {
      const Matrix& a = p.matrix();
      const std::size_t k = std::min(a.rows(), c.size());
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) s += a(i, j) * c[i] * c[j];
      if (!p.diagonal().is_zero()) {
        for (std::size_t n = 0; n < c.size(); ++n) s += p.diagonal()(n + 1) * c[n] * c[n];
      }
      return s;
    }
    case PolySpec::Shape::PmFamily: {
      const unsigned m = p.degree();
      const double x1 = x.coord(1);
      double tail = 0.0;
      for (std::size_t j = 2; j <= c.size(); ++j) {
        const double jd = static_cast<double>(j);
        tail += jd / (jd + 1.0) * c[j - 1] * c[j - 1];
      }
      return std::pow(x1, static_cast<int>(m)) +
             static_cast<double>(m) * std::pow(x1, static_cast<int>(m) - 2) * tail;
    }
    case PolySpec::Shape::VectorCoupling: {
      const double x1 = x.coord(1);
      std::vector<double> out(c.size() > 1 ? c.size() - 1 : 0);
      for (std::size_t j = 1; j <= out.size(); ++j) {
        const double jd = static_cast<double>(j);
        out[j - 1] = x1 * (jd / (jd + 1.0)) * c[j];
      }
      return LpVector(std::move(out), kTwo);
    }
  }
  return 0.0;
}

double magnitude(const PolySpec& p, const LpVector& x) {
  const PolyValue v = eval(p, x);
  if (const double* s = std::get_if<double>(&v)) return std::abs(*s);
  return lp_norm(std::get<LpVector>(v).coords(), 2.0);
}

double pm_norm_closed_form(unsigned m) {
  if (m < 3) throw Error(ErrorKind::InvalidDegree, "the P_m norm formula needs m >= 3");
  const double md = static_cast<double>(m);
  return 2.0 * std::pow((md - 2.0) / (md - 1.0), (md - 2.0) / 2.0);
}

NormEstimate pm_norm_numeric(unsigned m, std::size_t n) {
  if (m < 3) throw Error(ErrorKind::InvalidDegree, "the P_m family needs m >= 3");
  if (n < 2) throw Error(ErrorKind::Precondition, "P_m truncation needs N >= 2");
  const double md = static_cast<double>(m);
  const double coef = static_cast<double>(n) / static_cast<double>(n + 1);
  auto g = [&](double t) {
    return std::pow(t, md / 2.0) + md * std::pow(t, (md - 2.0) / 2.0) * coef * (1.0 - t);
  };
  auto [t, iters] = golden_max(g, 0.0, 1.0, 1e-15);
  if (g(1.0) > g(t)) t = 1.0;

  const PolySpec pm = PolySpec::pm_family(m);
  NormEstimate e;
  e.witness = two_spike_vector(t, n);
  e.value = magnitude(pm, *e.witness);
  e.method = Method::StructureReduction;
  e.iterations = iters;
  e.is_lower_bound = true;
  return e;
}

NormEstimate vector_coupling_norm(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::Precondition, "vector coupling truncation needs N >= 2");
  const double coef = static_cast<double>(n - 1) / static_cast<double>(n);
  auto h = [&](double t) { return coef * std::sqrt(t * (1.0 - t)); };
  const auto [t, iters] = golden_max(h, 0.0, 1.0, 1e-15);
  NormEstimate e;
  e.witness = two_spike_vector(t, n);
  e.value = magnitude(PolySpec::vector_coupling(), *e.witness);
  e.method = Method::StructureReduction;
  e.iterations = iters;
  return e;
}

NormEstimate vector_coupling_norm_ascent(std::size_t n, const SolverConfig& cfg) {
  const PolySpec p = PolySpec::vector_coupling();
  return projected_ascent(
      [&](std::span<const double> x) {
        return magnitude(p, LpVector(std::vector<double>(x.begin(), x.end()), kTwo));
      },
      n, kTwo, cfg);
}

OperatorSpec linearize_quadratic(const PolySpec& p) {
  if (p.shape() != PolySpec::Shape::QuadraticForm) {
    throw Error(ErrorKind::InvalidShape, "linearization is defined for scalar quadratic forms");
  }
  OperatorSpec dense = OperatorSpec::dense(p.matrix(), kTwo, kTwo);
  if (p.diagonal().is_zero()) return dense;
  return dense + OperatorSpec::diagonal(p.diagonal(), kTwo, kTwo);
}

BanachEqualityReport banach_equality_check(const Matrix& a, const SolverConfig& cfg) {
  if (a.rows() != a.cols() || !a.is_symmetric(1e-12 * std::max(1.0, a.max_abs()))) {
    throw Error(ErrorKind::Precondition, "asymmetric input: symmetrize first");
  }
  BanachEqualityReport r;
  const std::size_t n = a.rows();
  if (n == 0) return r;

  const NormEstimate spectral = spectral_abs_max(a, cfg);
  r.poly_norm = spectral.value;
  r.witness = *spectral.witness;

  r.poly_norm_ascent = projected_ascent(
                           [&](std::span<const double> x) {
                             const auto ax = a.multiply(x);
                             double s = 0.0;
                             for (std::size_t i = 0; i < n; ++i) s += x[i] * ax[i];
                             return std::abs(s);
                           },
                           n, kTwo, cfg)
                           .value;

  const Matrix gram = (a.transpose() * a).symmetrized();
  const EigenExtremes g = symmetric_eig_extremes(gram, cfg);
  r.bilinear_norm = std::sqrt(std::max(0.0, g.lambda_max));

  // max_{x,y} x^T A y: alternate the two exact partial maximisations.
  std::vector<double> best(cfg.restarts, 0.0);
  for_each_index(cfg.exec, cfg.restarts, [&](std::size_t k) {
    auto x = restart_start(n, cfg.seed, k);
    double value = 0.0;
    for (std::size_t it = 0; it < cfg.max_iter; ++it) {
      auto y = a.multiply_transpose(x);
      const double ny = lp_norm(y, 2.0);
      if (ny == 0.0) break;
      for (double& v : y) v /= ny;
      auto ay = a.multiply(y);
      const double nx = lp_norm(ay, 2.0);
      if (nx == 0.0) break;
      for (std::size_t i = 0; i < n; ++i) x[i] = ay[i] / nx;
      const double next = nx;  // = x^T A y with the updated x
      const bool done = std::abs(next - value) <= cfg.tol * std::max(1.0, next);
      value = std::max(value, next);
      if (done) break;
    }
    best[k] = value;
  });
  r.bilinear_alternating = *std::max_element(best.begin(), best.end());
  r.gap = std::abs(r.poly_norm - r.bilinear_norm);
  return r;
}

NormEstimate polynomial_section_norm(const PolySpec& p, std::size_t n, const SolverConfig& cfg) {
  if (n == 0) throw Error(ErrorKind::Precondition, "section norm needs N >= 1");
  switch (p.shape()) {
    case PolySpec::Shape::PmFamily: return pm_norm_numeric(p.degree(), n);
    case PolySpec::Shape::VectorCoupling: return vector_coupling_norm(n);
    case PolySpec::Shape::QuadraticForm: break;
  }
  const Matrix& a = p.matrix();
  const DiagonalRule& rule = p.diagonal();
  const std::size_t block = std::min(n, a.rows());
  if (block > kDenseSectionCap) {
    throw Error(ErrorKind::Configuration, "dense quadratic blocks are capped at " +
                                              std::to_string(kDenseSectionCap));
  }
  NormEstimate e;
  e.method = Method::EigenSpectral;
  e.is_lower_bound = false;
  e.value = 0.0;
  e.witness = LpVector::basis(1, kTwo, n);
  if (block > 0) {
    Matrix b = a.leading_block(block);
    if (!rule.is_zero()) {
      for (std::size_t i = 0; i < block; ++i) b(i, i) += rule(i + 1);
    }
    const NormEstimate s = spectral_abs_max(b, cfg);
    e.value = s.value;
    e.witness = s.witness->resized(n);
    e.iterations = s.iterations;
    e.stationarity_gap = s.stationarity_gap;
    e.converged = s.converged;
  }
  // The diagonal tail beyond the matrix block decouples.
  if (!rule.is_zero()) {
    for (std::size_t k = block + 1; k <= n; ++k) {
      const double v = std::abs(rule(k));
      if (v > e.value) {
        e.value = v;
        e.witness = LpVector::basis(k, kTwo, n);
      }
    }
  }
  return e;
}

}  // namespace normlab
