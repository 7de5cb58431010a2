#include "normlab/lp_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "normlab/error.hpp"

namespace normlab {

Exponent Exponent::domain(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidExponent, "domain exponent must satisfy 1 < p < inf, got " +
                                                std::to_string(p));
  }
  return {p, Role::Domain};
}

Exponent Exponent::range(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw Error(ErrorKind::InvalidExponent, "range exponent must satisfy 1 <= q < inf, got " +
                                                std::to_string(q));
  }
  return {q, Role::Range};
}

double Exponent::conjugate() const {
  if (value_ == 1.0) return std::numeric_limits<double>::infinity();
  return value_ / (value_ - 1.0);
}

LpVector::LpVector(std::vector<double> coords, Exponent p) : coords_(std::move(coords)), p_(p) {
  for (double c : coords_) {
    if (!std::isfinite(c)) throw Error(ErrorKind::MalformedInput, "non-finite coordinate");
  }
}

LpVector LpVector::zeros(std::size_t dim, Exponent p) { return {std::vector<double>(dim, 0.0), p}; }

LpVector LpVector::basis(std::size_t index, Exponent p, std::size_t dim) {
  if (index == 0) throw Error(ErrorKind::Precondition, "basis vectors are 1-based");
  std::vector<double> c(std::max(dim, index), 0.0);
  c[index - 1] = 1.0;
  return {std::move(c), p};
}

double LpVector::coord(std::size_t index) const {
  if (index == 0 || index > coords_.size()) return 0.0;
  return coords_[index - 1];
}

LpVector LpVector::resized(std::size_t dim) const {
  std::vector<double> c = coords_;
  c.resize(dim, 0.0);
  return {std::move(c), p_};
}

LpVector LpVector::with_exponent(Exponent p) const { return {coords_, p}; }

bool LpVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double c) { return c == 0.0; });
}

namespace {

void require_same_exponent(const LpVector& a, const LpVector& b) {
  if (!(a.exponent() == b.exponent())) {
    throw Error(ErrorKind::Configuration, "vectors live in different l_p spaces");
  }
}

}  // namespace

LpVector operator+(const LpVector& a, const LpVector& b) {
  require_same_exponent(a, b);
  std::vector<double> c(std::max(a.dim(), b.dim()), 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.dim(); ++i) c[i] += b[i];
  return {std::move(c), a.exponent()};
}

LpVector operator-(const LpVector& a, const LpVector& b) { return a + (-1.0) * b; }

LpVector operator*(double s, const LpVector& v) {
  std::vector<double> c(v.coords().begin(), v.coords().end());
  for (double& x : c) x *= s;
  return {std::move(c), v.exponent()};
}

double lp_norm_pow(std::span<const double> v, double p) {
  double s = 0.0;
  if (p == 2.0) {
    for (double x : v) s += x * x;
  } else if (p == 1.0) {
    for (double x : v) s += std::abs(x);
  } else {
    for (double x : v) s += std::pow(std::abs(x), p);
  }
  return s;
}

double lp_norm(std::span<const double> v, double p) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  if (p == 1.0) return lp_norm_pow(v, 1.0);
  // Scale by the largest magnitude so huge or tiny coordinates neither
  // overflow nor underflow in the power sum.
  double s = 0.0;
  if (p == 2.0) {
    for (double x : v) {
      const double t = x / m;
      s += t * t;
    }
    return m * std::sqrt(s);
  }
  for (double x : v) s += std::pow(std::abs(x) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double lp_norm(const LpVector& v) { return lp_norm(v.coords(), v.exponent().value()); }

double dot(const LpVector& a, const LpVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(a.dim(), b.dim()); ++i) s += a[i] * b[i];
  return s;
}

LpVector normalize(const LpVector& v) {
  const double n = lp_norm(v);
  if (n == 0.0) throw Error(ErrorKind::DegenerateInput, "cannot normalize the zero vector");
  return (1.0 / n) * v;
}

std::vector<double> duality_map(std::span<const double> y, double r) {
  if (!(r > 1.0)) throw Error(ErrorKind::InvalidExponent, "duality map needs r > 1");
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double a = std::abs(y[i]);
    const double mag = (r == 2.0) ? a : std::pow(a, r - 1.0);
    out[i] = std::copysign(mag, y[i]);
    if (y[i] == 0.0) out[i] = 0.0;
  }
  return out;
}

LpVector duality_map(const LpVector& y, double r) {
  auto c = duality_map(y.coords(), r);
  return {std::move(c), Exponent::range(r / (r - 1.0))};
}

// ---------------------------------------------------------------------------

SequenceFamily SequenceFamily::two_spike(double a, double b, Exponent p, std::size_t fixed_index,
                                         std::size_t offset) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::MalformedInput, "two-spike weights must be finite");
  }
  const double mass = std::pow(std::abs(a), p.value()) + std::pow(std::abs(b), p.value());
  if (std::abs(mass - 1.0) > 1e-12) {
    throw Error(ErrorKind::Precondition, "two-spike weights must satisfy |a|^p + |b|^p = 1");
  }
  if (fixed_index == 0 || fixed_index >= 2 + offset) {
    throw Error(ErrorKind::Precondition,
                "two-spike moving index must stay strictly after the fixed index");
  }
  SequenceFamily f(Rule::TwoSpike, p);
  f.a_ = a;
  f.b_ = b;
  f.fixed_ = fixed_index;
  f.offset_ = offset;
  return f;
}

SequenceFamily SequenceFamily::basis_tail(Exponent p) { return {Rule::BasisTail, p}; }

SequenceFamily SequenceFamily::recorded(std::vector<LpVector> members) {
  if (members.empty()) throw Error(ErrorKind::Precondition, "recorded family is empty");
  const Exponent p = members.front().exponent();
  for (const auto& m : members) {
    if (!(m.exponent() == p)) {
      throw Error(ErrorKind::Configuration, "recorded members use different exponents");
    }
    if (std::abs(lp_norm(m) - 1.0) > 1e-12) {
      throw Error(ErrorKind::Precondition, "recorded members must be unit vectors");
    }
  }
  SequenceFamily f(Rule::Recorded, p);
  f.members_ = std::move(members);
  return f;
}

void SequenceFamily::check_index(std::size_t n) const {
  if (n < 2) throw Error(ErrorKind::Precondition, "family members are indexed from n = 2");
  if (rule_ == Rule::Recorded && n - 2 >= members_.size()) {
    throw Error(ErrorKind::Precondition, "recorded family has no member " + std::to_string(n));
  }
}

std::size_t SequenceFamily::support_dim(std::size_t n) const {
  check_index(n);
  switch (rule_) {
    case Rule::TwoSpike: return n + offset_;
    case Rule::BasisTail: return n;
    case Rule::Recorded: return members_[n - 2].dim();
  }
  return 0;
}

double SequenceFamily::coordinate(std::size_t n, std::size_t index) const {
  check_index(n);
  switch (rule_) {
    case Rule::TwoSpike:
      if (index == fixed_) return a_;
      return index == n + offset_ ? b_ : 0.0;
    case Rule::BasisTail: return index == n ? 1.0 : 0.0;
    case Rule::Recorded: return members_[n - 2].coord(index);
  }
  return 0.0;
}

LpVector SequenceFamily::member(std::size_t n) const {
  check_index(n);
  if (rule_ == Rule::Recorded) return members_[n - 2];
  const std::size_t dim = support_dim(n);
  std::vector<double> c(dim, 0.0);
  for (std::size_t i = 1; i <= dim; ++i) c[i - 1] = coordinate(n, i);
  return {std::move(c), p_};
}

std::optional<std::size_t> SequenceFamily::last_index() const {
  if (rule_ == Rule::Recorded) return members_.size() + 1;
  return std::nullopt;
}

std::string SequenceFamily::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (rule_) {
    case Rule::TwoSpike:
      os << "two-spike " << a_ << " e_" << fixed_ << " + " << b_ << " e_{n+" << offset_ << "}";
      break;
    case Rule::BasisTail: os << "basis tail e_n"; break;
    case Rule::Recorded: os << "recorded, " << members_.size() << " members"; break;
  }
  os << ", p = " << p_.value();
  return os.str();
}

WeakLimitEstimate weak_limit_estimate(const SequenceFamily& fam, std::size_t n_max, double tol,
                                      Exec exec) {
  if (auto last = fam.last_index()) n_max = std::min(n_max, *last);
  if (n_max < 4) throw Error(ErrorKind::Precondition, "weak-limit estimation needs n_max >= 4");

  const std::size_t count = n_max - 1;  // members 2..n_max
  const std::size_t tail = std::max<std::size_t>(1, count / 4);
  const std::size_t first = n_max - tail + 1;

  std::size_t window = 0;
  for (std::size_t n = 2; n < first; ++n) window = std::max(window, fam.support_dim(n));

  std::vector<double> avg(window, 0.0);
  std::vector<double> osc(window, 0.0);
  for_each_index(exec, window, [&](std::size_t i) {
    const std::size_t index = i + 1;
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t n = first; n <= n_max; ++n) {
      const double c = fam.coordinate(n, index);
      sum += c;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    avg[i] = sum / static_cast<double>(tail);
    osc[i] = hi - lo;
  });

  WeakLimitEstimate est{LpVector(std::move(avg), fam.exponent()), window, first, n_max, {}, 0.0};
  for (std::size_t i = 0; i < window; ++i) {
    est.max_oscillation = std::max(est.max_oscillation, osc[i]);
    if (osc[i] > tol) est.unsettled.push_back(i + 1);
  }
  return est;
}

// ---------------------------------------------------------------------------

std::size_t SampleGrid::size() const {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw Error(ErrorKind::Precondition, "sample grid needs step > 0 and hi >= lo");
  }
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

double splitting_lhs(double x, double r) {
  return std::abs(std::pow(std::abs(x), r) - std::pow(std::abs(x - 1.0), r) - 1.0);
}

ScalarInequalityCheck scalar_ineq_constant(double r, double epsilon, const SampleGrid& grid,
                                           Exec exec) {
  if (!(r > 1.0)) throw Error(ErrorKind::InvalidExponent, "inequality exponent needs r > 1");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Precondition, "epsilon must be positive");
  const std::size_t n = grid.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  ScalarInequalityCheck out;
  out.r = r;
  out.epsilon = epsilon;
  out.grid = grid;

  const IndexedMax near_one = argmax(exec, n, [&](std::size_t k) {
    const double t = grid.at(k);
    return std::abs(t - 1.0) <= epsilon ? std::abs(std::pow(std::abs(t), r) - 1.0) : nan;
  });
  const double delta = std::pow(epsilon, r) + (near_one.found ? near_one.value : 0.0);
  out.delta_epsilon = delta;

  const IndexedMax ratio = argmax(exec, n, [&](std::size_t k) {
    const double x = grid.at(k);
    const double w = std::pow(std::abs(x - 1.0), r - 1.0);
    return w > 0.0 ? (splitting_lhs(x, r) - delta) / w : nan;
  });
  out.required_c = ratio.found ? std::max(0.0, ratio.value) : 0.0;

  auto violation = [&](double c) {
    return argmax(exec, n, [&](std::size_t k) {
      const double x = grid.at(k);
      return splitting_lhs(x, r) - c * std::pow(std::abs(x - 1.0), r - 1.0) - delta;
    });
  };

  constexpr double kLargest = 0x1p64;
  constexpr double kSmallest = 0x1p-40;
  IndexedMax v = violation(0.0);
  if (v.value <= 0.0) {
    out.c_epsilon = 0.0;
    out.max_violation = v.value;
    out.witness_x = grid.at(v.index);
    out.passed = true;
    return out;
  }

  double hi = 1.0;
  IndexedMax at_hi = violation(hi);
  while (at_hi.value > 0.0) {
    if (hi >= kLargest) {
      out.c_epsilon = hi;
      out.max_violation = at_hi.value;
      out.witness_x = grid.at(at_hi.index);
      out.passed = false;
      return out;
    }
    hi *= 2.0;
    ++out.doublings;
    at_hi = violation(hi);
  }
  double lo = hi / 2.0;
  while (lo > kSmallest && violation(lo).value <= 0.0) {
    hi = lo;
    lo /= 2.0;
    ++out.doublings;
  }
  if (lo <= kSmallest) lo = 0.0;
  at_hi = violation(hi);

  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    const IndexedMax m = violation(mid);
    ++out.bisections;
    if (m.value <= 0.0) {
      hi = mid;
      at_hi = m;
    } else {
      lo = mid;
    }
  }
  out.c_epsilon = hi;
  out.max_violation = at_hi.value;
  out.witness_x = grid.at(at_hi.index);
  out.passed = at_hi.value <= 0.0;
  return out;
}

}  // namespace normlab
