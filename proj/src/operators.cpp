#include "normlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

#include "normlab/error.hpp"
#include "normlab/norm_estimation.hpp"

namespace normlab {

DiagonalRule DiagonalRule::constant(double c) {
  if (!std::isfinite(c)) throw Error(ErrorKind::MalformedInput, "diagonal constant must be finite");
  DiagonalRule r(Kind::Constant);
  r.constant_ = c;
  return r;
}

DiagonalRule DiagonalRule::table(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::MalformedInput, "diagonal table entry not finite");
  }
  DiagonalRule r(Kind::Table);
  r.table_ = std::move(values);
  return r;
}

double DiagonalRule::operator()(std::size_t n) const {
  const double x = static_cast<double>(n);
  switch (kind_) {
    case Kind::Ratio: return (x - 1.0) / x;
    case Kind::UnitHeadRatio: return n == 1 ? 1.0 : (x - 1.0) / x;
    case Kind::Reciprocal: return 1.0 / x;
    case Kind::Constant: return constant_;
    case Kind::Table: return n >= 1 && n <= table_.size() ? table_[n - 1] : 0.0;
  }
  return 0.0;
}

std::vector<double> DiagonalRule::section(std::size_t n) const {
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (*this)(i + 1);
  return d;
}

bool DiagonalRule::vanishes_at_infinity() const {
  switch (kind_) {
    case Kind::Reciprocal:
    case Kind::Table: return true;
    case Kind::Constant: return constant_ == 0.0;
    default: return false;
  }
}

bool DiagonalRule::is_zero() const {
  if (kind_ == Kind::Constant) return constant_ == 0.0;
  if (kind_ == Kind::Table) {
    return std::all_of(table_.begin(), table_.end(), [](double v) { return v == 0.0; });
  }
  return false;
}

std::string DiagonalRule::name() const {
  switch (kind_) {
    case Kind::Ratio: return "(n-1)/n";
    case Kind::UnitHeadRatio: return "unit-head-ratio";
    case Kind::Reciprocal: return "1/n";
    case Kind::Constant: return "const";
    case Kind::Table: return "table";
  }
  return "?";
}

// ---------------------------------------------------------------------------

struct OperatorSpec::Node {
  Exponent p;
  Exponent q;
  std::variant<Diagonal, Dense, RankOne, Sum, Scaled> shape;
};

OperatorSpec OperatorSpec::diagonal(DiagonalRule rule, Exponent p, Exponent q) {
  return OperatorSpec(std::make_shared<const Node>(Node{p, q, Diagonal{std::move(rule)}}));
}

OperatorSpec OperatorSpec::dense(Matrix m, Exponent p, Exponent q) {
  return OperatorSpec(std::make_shared<const Node>(Node{p, q, Dense{std::move(m)}}));
}

OperatorSpec OperatorSpec::rank_one(std::vector<double> functional,
                                    std::vector<double> range_vector, double scale, Exponent p,
                                    Exponent q) {
  for (double v : functional)
    if (!std::isfinite(v)) throw Error(ErrorKind::MalformedInput, "functional not finite");
  for (double v : range_vector)
    if (!std::isfinite(v)) throw Error(ErrorKind::MalformedInput, "range vector not finite");
  if (!std::isfinite(scale)) throw Error(ErrorKind::MalformedInput, "rank-one scale not finite");
  return OperatorSpec(std::make_shared<const Node>(
      Node{p, q, RankOne{std::move(functional), std::move(range_vector), scale}}));
}

OperatorSpec OperatorSpec::sum(std::vector<OperatorSpec> terms) {
  if (terms.empty()) throw Error(ErrorKind::Precondition, "operator sum needs at least one term");
  const Exponent p = terms.front().domain();
  const Exponent q = terms.front().range();
  for (const auto& t : terms) {
    if (!(t.domain() == p) || !(t.range() == q)) {
      throw Error(ErrorKind::Configuration, "sum members must share domain and range exponents");
    }
  }
  return OperatorSpec(std::make_shared<const Node>(Node{p, q, Sum{std::move(terms)}}));
}

OperatorSpec OperatorSpec::scaled(OperatorSpec base, double factor) {
  if (!std::isfinite(factor)) throw Error(ErrorKind::MalformedInput, "scale factor not finite");
  const Exponent p = base.domain();
  const Exponent q = base.range();
  return OperatorSpec(
      std::make_shared<const Node>(Node{p, q, Scaled{{std::move(base)}, factor}}));
}

Exponent OperatorSpec::domain() const { return node_->p; }
Exponent OperatorSpec::range() const { return node_->q; }

ShapeKind OperatorSpec::kind() const {
  return static_cast<ShapeKind>(node_->shape.index());
}

const OperatorSpec::Diagonal* OperatorSpec::as_diagonal() const {
  return std::get_if<Diagonal>(&node_->shape);
}
const OperatorSpec::Dense* OperatorSpec::as_dense() const {
  return std::get_if<Dense>(&node_->shape);
}
const OperatorSpec::RankOne* OperatorSpec::as_rank_one() const {
  return std::get_if<RankOne>(&node_->shape);
}
const OperatorSpec::Sum* OperatorSpec::as_sum() const { return std::get_if<Sum>(&node_->shape); }
const OperatorSpec::Scaled* OperatorSpec::as_scaled() const {
  return std::get_if<Scaled>(&node_->shape);
}

bool OperatorSpec::compact_type() const {
  if (const auto* d = as_diagonal()) return d->rule.vanishes_at_infinity();
  if (as_dense() || as_rank_one()) return true;
  if (const auto* s = as_sum()) {
    return std::all_of(s->terms.begin(), s->terms.end(),
                       [](const OperatorSpec& t) { return t.compact_type(); });
  }
  const auto* sc = as_scaled();
  return sc->factor == 0.0 || sc->base.front().compact_type();
}

std::string OperatorSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* d = as_diagonal()) {
    os << "diag[" << d->rule.name() << "]";
  } else if (const auto* m = as_dense()) {
    os << "dense " << m->matrix.rows() << "x" << m->matrix.cols();
  } else if (const auto* r = as_rank_one()) {
    os << "rank-one scale " << r->scale;
  } else if (const auto* s = as_sum()) {
    os << "sum(";
    for (std::size_t i = 0; i < s->terms.size(); ++i) {
      if (i) os << " + ";
      os << s->terms[i].describe();
    }
    os << ")";
  } else {
    const auto* sc = as_scaled();
    os << sc->factor << " * " << sc->base.front().describe();
  }
  return os.str();
}

OperatorSpec operator+(const OperatorSpec& a, const OperatorSpec& b) {
  return OperatorSpec::sum({a, b});
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> apply_raw(const OperatorSpec& t, std::span<const double> v) {
  if (const auto* d = t.as_diagonal()) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] == 0.0 ? 0.0 : d->rule(i + 1) * v[i];
    return out;
  }
  if (const auto* m = t.as_dense()) {
    // A finite matrix acts as A (+) 0: coordinates past the block are ignored.
    return m->matrix.multiply(v.first(std::min(v.size(), m->matrix.cols())));
  }
  if (const auto* r = t.as_rank_one()) {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(v.size(), r->functional.size()); ++i) {
      s += r->functional[i] * v[i];
    }
    std::vector<double> out(r->range_vector.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = r->scale * s * r->range_vector[i];
    return out;
  }
  if (const auto* sm = t.as_sum()) {
    std::vector<double> out;
    for (const auto& term : sm->terms) {
      auto part = apply_raw(term, v);
      if (part.size() > out.size()) out.resize(part.size(), 0.0);
      for (std::size_t i = 0; i < part.size(); ++i) out[i] += part[i];
    }
    return out;
  }
  const auto* sc = t.as_scaled();
  auto out = apply_raw(sc->base.front(), v);
  for (double& x : out) x *= sc->factor;
  return out;
}

}  // namespace

LpVector apply(const OperatorSpec& t, const LpVector& v) {
  if (!(v.exponent() == t.domain())) {
    throw Error(ErrorKind::Configuration, "vector exponent does not match the operator domain");
  }
  return {apply_raw(t, v.coords()), t.range()};
}

Matrix section_matrix(const OperatorSpec& t, std::size_t n) {
  constexpr std::size_t kCap = 4096;
  if (n == 0) throw Error(ErrorKind::Precondition, "finite section needs N >= 1");
  if (n > kCap) {
    throw Error(ErrorKind::Configuration,
                "dense finite sections are limited to N <= " + std::to_string(kCap));
  }
  if (const auto* d = t.as_diagonal()) {
    const auto diag = d->rule.section(n);
    return Matrix::diagonal(diag);
  }
  if (const auto* m = t.as_dense()) return m->matrix.leading_block(n);
  if (const auto* r = t.as_rank_one()) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < std::min(n, r->range_vector.size()); ++i)
      for (std::size_t j = 0; j < std::min(n, r->functional.size()); ++j)
        out(i, j) = r->scale * r->range_vector[i] * r->functional[j];
    return out;
  }
  if (const auto* s = t.as_sum()) {
    Matrix out(n, n);
    for (const auto& term : s->terms) out = out + section_matrix(term, n);
    return out;
  }
  const auto* sc = t.as_scaled();
  return sc->factor * section_matrix(sc->base.front(), n);
}

OperatorSpec finite_section(const OperatorSpec& t, std::size_t n) {
  return OperatorSpec::dense(section_matrix(t, n), t.domain(), t.range());
}

std::optional<std::vector<double>> diagonal_section(const OperatorSpec& t, std::size_t n) {
  if (const auto* d = t.as_diagonal()) return d->rule.section(n);
  if (const auto* m = t.as_dense()) {
    const Matrix& a = m->matrix;
    std::vector<double> diag(n, 0.0);
    for (std::size_t i = 0; i < std::min(n, a.rows()); ++i) {
      for (std::size_t j = 0; j < std::min(n, a.cols()); ++j) {
        if (i == j) {
          diag[i] = a(i, j);
        } else if (a(i, j) != 0.0) {
          return std::nullopt;
        }
      }
    }
    return diag;
  }
  if (const auto* r = t.as_rank_one()) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < std::min(n, r->range_vector.size()); ++i)
      if (r->range_vector[i] != 0.0) rows.push_back(i);
    for (std::size_t j = 0; j < std::min(n, r->functional.size()); ++j)
      if (r->functional[j] != 0.0) cols.push_back(j);
    std::vector<double> diag(n, 0.0);
    if (rows.empty() || cols.empty() || r->scale == 0.0) return diag;
    if (rows.size() == 1 && cols.size() == 1 && rows[0] == cols[0]) {
      const std::size_t k = rows[0];
      diag[k] = r->scale * r->range_vector[k] * r->functional[k];
      return diag;
    }
    return std::nullopt;
  }
  if (const auto* s = t.as_sum()) {
    std::vector<double> diag(n, 0.0);
    for (const auto& term : s->terms) {
      auto part = diagonal_section(term, n);
      if (!part) return std::nullopt;
      for (std::size_t i = 0; i < n; ++i) diag[i] += (*part)[i];
    }
    return diag;
  }
  const auto* sc = t.as_scaled();
  auto part = diagonal_section(sc->base.front(), n);
  if (!part) return std::nullopt;
  for (double& v : *part) v *= sc->factor;
  return part;
}

NormEstimate diagonal_norm(std::span<const double> d, Exponent p, Exponent q) {
  NormEstimate e;
  e.method = Method::ClosedForm;
  e.is_lower_bound = false;
  const std::size_t n = d.size();
  if (n == 0) {
    e.value = 0.0;
    return e;
  }
  const double pv = p.value();
  const double qv = q.value();
  if (pv <= qv) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(d[i]) > std::abs(d[arg])) arg = i;
    e.value = std::abs(d[arg]);
    e.witness = LpVector::basis(arg + 1, p, n);
    return e;
  }
  const double r = pv * qv / (pv - qv);
  e.value = lp_norm(d, r);
  if (e.value == 0.0) {
    e.witness = LpVector::basis(1, p, n);
    return e;
  }
  // Hoelder extremal: |x_n| proportional to |d_n|^(r/p).
  std::vector<double> x(n);
  const double peak = std::abs(*std::max_element(
      d.begin(), d.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }));
  for (std::size_t i = 0; i < n; ++i) x[i] = std::pow(std::abs(d[i]) / peak, r / pv);
  e.witness = normalize(LpVector(std::move(x), p));
  return e;
}

NormEstimate diagonal_norm(const DiagonalRule& rule, std::size_t n, Exponent p, Exponent q) {
  const auto d = rule.section(n);
  return diagonal_norm(d, p, q);
}

NormEstimate section_norm(const OperatorSpec& t, std::size_t n, const SolverConfig& cfg,
                          std::span<const std::vector<double>> warm_starts) {
  if (n == 0) throw Error(ErrorKind::Precondition, "section norm needs N >= 1");
  if (auto d = diagonal_section(t, n)) return diagonal_norm(*d, t.domain(), t.range());
  if (n > kDenseSectionCap) {
    throw Error(ErrorKind::Configuration, "dense finite sections are capped at N <= " +
                                              std::to_string(kDenseSectionCap));
  }
  return boyd_power_iteration(section_matrix(t, n), t.domain(), t.range(), cfg, warm_starts);
}

double rank_one_norm(const OperatorSpec& k) {
  if (const auto* sc = k.as_scaled()) return std::abs(sc->factor) * rank_one_norm(sc->base.front());
  const auto* r = k.as_rank_one();
  if (!r) throw Error(ErrorKind::InvalidShape, "rank_one_norm needs a rank-one operator");
  const double p_conj = k.domain().conjugate();
  return std::abs(r->scale) * lp_norm(r->functional, p_conj) *
         lp_norm(r->range_vector, k.range().value());
}

}  // namespace normlab
