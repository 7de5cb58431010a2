#pragma once

// Finitely supported vectors of the sequence spaces l_p, rule-based sequence
// families standing in for maximizing sequences, weak-limit estimation, and
// the scalar inequality behind the coordinatewise splitting argument.
//
// Indices are 1-based in every public signature that takes a coordinate or
// family index (e_1, e_2, ...); storage is 0-based.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normlab/kernels.hpp"

namespace normlab {

class Exponent {
 public:
  enum class Role { Domain, Range };

  /// Domain exponent, 1 < p < inf.
  static Exponent domain(double p);
  /// Range exponent, 1 <= q < inf.
  static Exponent range(double q);

  double value() const { return value_; }
  Role role() const { return role_; }

  /// p/(p-1); +inf when p == 1.
  double conjugate() const;

  friend bool operator==(Exponent a, Exponent b) { return a.value_ == b.value_; }

 private:
  Exponent(double v, Role r) : value_(v), role_(r) {}
  double value_;
  Role role_;
};

class LpVector {
 public:
  LpVector(std::vector<double> coords, Exponent p);

  static LpVector zeros(std::size_t dim, Exponent p);
  /// e_index in a space of dimension max(dim, index).
  static LpVector basis(std::size_t index, Exponent p, std::size_t dim = 0);

  std::size_t dim() const { return coords_.size(); }
  Exponent exponent() const { return p_; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  /// Coordinate at 1-based index; zero beyond the stored support.
  double coord(std::size_t index) const;

  LpVector resized(std::size_t dim) const;
  LpVector with_exponent(Exponent p) const;
  bool is_zero() const;

  friend LpVector operator+(const LpVector& a, const LpVector& b);
  friend LpVector operator-(const LpVector& a, const LpVector& b);
  friend LpVector operator*(double s, const LpVector& v);

 private:
  std::vector<double> coords_;
  Exponent p_;
};

double lp_norm(std::span<const double> v, double p);
/// sum |v_i|^p, without the outer root.
double lp_norm_pow(std::span<const double> v, double p);
double lp_norm(const LpVector& v);
double dot(const LpVector& a, const LpVector& b);
LpVector normalize(const LpVector& v);

/// Coordinatewise sign(y_i)|y_i|^(r-1); the result lives in l_{r/(r-1)}.
LpVector duality_map(const LpVector& y, double r);
std::vector<double> duality_map(std::span<const double> y, double r);

/// Sequence (x^n)_{n>=2} of unit vectors.
class SequenceFamily {
 public:
  enum class Rule { TwoSpike, BasisTail, Recorded };

  /// a e_fixed + b e_{n+offset}; requires |a|^p + |b|^p = 1 and the moving
  /// index to stay strictly after the fixed one.
  static SequenceFamily two_spike(double a, double b, Exponent p, std::size_t fixed_index = 1,
                                  std::size_t offset = 0);
  /// (e_n)_{n>=2}.
  static SequenceFamily basis_tail(Exponent p);
  /// members[0] is x^2, members[1] is x^3, and so on.
  static SequenceFamily recorded(std::vector<LpVector> members);

  Rule rule() const { return rule_; }
  Exponent exponent() const { return p_; }

  LpVector member(std::size_t n) const;
  double coordinate(std::size_t n, std::size_t index) const;
  std::size_t support_dim(std::size_t n) const;
  /// Last defined member index for recorded families.
  std::optional<std::size_t> last_index() const;

  double spike_fixed() const { return a_; }
  double spike_moving() const { return b_; }
  std::size_t fixed_index() const { return fixed_; }
  std::size_t offset() const { return offset_; }
  std::string describe() const;

 private:
  SequenceFamily(Rule rule, Exponent p) : rule_(rule), p_(p) {}
  void check_index(std::size_t n) const;

  Rule rule_;
  Exponent p_;
  double a_ = 0.0;
  double b_ = 0.0;
  std::size_t fixed_ = 1;
  std::size_t offset_ = 0;
  std::vector<LpVector> members_;
};

struct WeakLimitEstimate {
  LpVector limit = LpVector::zeros(0, Exponent::domain(2.0));
  /// Coordinates 1..window are examined: those already reached by the members
  /// before the tail, i.e. the coordinates held fixed while n grows.
  std::size_t window = 0;
  std::size_t tail_first = 0;
  std::size_t tail_last = 0;
  /// 1-based coordinates whose tail oscillation exceeds the tolerance.
  std::vector<std::size_t> unsettled;
  double max_oscillation = 0.0;
};

/// Tail average of each coordinate over the last quarter of 2..n_max. Recorded
/// families clamp n_max to their length.
WeakLimitEstimate weak_limit_estimate(const SequenceFamily& fam, std::size_t n_max, double tol,
                                      Exec exec = Exec::Parallel);

struct SampleGrid {
  double lo = -100.0;
  double hi = 100.0;
  double step = 1e-3;

  std::size_t size() const;
  double at(std::size_t k) const { return lo + static_cast<double>(k) * step; }
};

struct ScalarInequalityCheck {
  double r = 0.0;
  double epsilon = 0.0;
  double c_epsilon = 0.0;
  double delta_epsilon = 0.0;
  SampleGrid grid;
  double max_violation = 0.0;
  double witness_x = 0.0;
  /// max over the grid of (lhs - delta)/|x-1|^(r-1): the exact grid minimum
  /// the bracketing search converges to from above.
  double required_c = 0.0;
  bool passed = false;
  int doublings = 0;
  int bisections = 0;
};

/// Left side of the splitting inequality, | |x|^r - |x-1|^r - 1 |.
double splitting_lhs(double x, double r);

/// Smallest C (to relative 1e-12) with lhs(x) <= C|x-1|^(r-1) + delta(eps) at
/// every grid point, found by doubling then bisection.
ScalarInequalityCheck scalar_ineq_constant(double r, double epsilon, const SampleGrid& grid,
                                           Exec exec = Exec::Parallel);

}  // namespace normlab
