#pragma once

// Structured bounded operators l_p -> l_q, their finite sections and
// closed-form norms.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normlab/lp_space.hpp"
#include "normlab/matrix.hpp"
#include "normlab/norm_estimate.hpp"

namespace normlab {

/// Diagonal entries d_n (n = 1, 2, ...) from a fixed vocabulary of rules.
class DiagonalRule {
 public:
  enum class Kind {
    Ratio,          // (n-1)/n
    UnitHeadRatio,  // 1 at n = 1, (n-1)/n afterwards
    Reciprocal,     // 1/n
    Constant,       // c
    Table,          // listed values, zero beyond the table
  };

  static DiagonalRule ratio() { return DiagonalRule(Kind::Ratio); }
  static DiagonalRule unit_head_ratio() { return DiagonalRule(Kind::UnitHeadRatio); }
  static DiagonalRule reciprocal() { return DiagonalRule(Kind::Reciprocal); }
  static DiagonalRule constant(double c);
  static DiagonalRule table(std::vector<double> values);
  static DiagonalRule zero() { return table({}); }

  Kind kind() const { return kind_; }
  double operator()(std::size_t n) const;
  std::vector<double> section(std::size_t n) const;
  /// d_n -> 0; the compact-type flag for diagonal operators.
  bool vanishes_at_infinity() const;
  bool is_zero() const;
  double constant_value() const { return constant_; }
  const std::vector<double>& table_values() const { return table_; }
  std::string name() const;

 private:
  explicit DiagonalRule(Kind k) : kind_(k) {}
  Kind kind_;
  double constant_ = 0.0;
  std::vector<double> table_;
};

enum class ShapeKind { Diagonal, DenseMatrix, RankOne, Sum, Scaled };

/// Immutable, cheaply copyable description of T: l_p -> l_q.
class OperatorSpec {
 public:
  struct Diagonal {
    DiagonalRule rule;
  };
  struct Dense {
    Matrix matrix;
  };
  /// x -> scale * <functional, x> * range_vector.
  struct RankOne {
    std::vector<double> functional;
    std::vector<double> range_vector;
    double scale = 1.0;
  };
  struct Sum {
    std::vector<OperatorSpec> terms;
  };
  struct Scaled {
    std::vector<OperatorSpec> base;  // exactly one element
    double factor = 1.0;
  };

  static OperatorSpec diagonal(DiagonalRule rule, Exponent p, Exponent q);
  static OperatorSpec dense(Matrix m, Exponent p, Exponent q);
  static OperatorSpec rank_one(std::vector<double> functional, std::vector<double> range_vector,
                               double scale, Exponent p, Exponent q);
  static OperatorSpec sum(std::vector<OperatorSpec> terms);
  static OperatorSpec scaled(OperatorSpec base, double factor);

  Exponent domain() const;
  Exponent range() const;
  ShapeKind kind() const;
  /// Declared compactness: rank-one, finite matrices, vanishing diagonals,
  /// and sums or multiples of those.
  bool compact_type() const;

  const Diagonal* as_diagonal() const;
  const Dense* as_dense() const;
  const RankOne* as_rank_one() const;
  const Sum* as_sum() const;
  const Scaled* as_scaled() const;

  std::string describe() const;

 private:
  struct Node;
  explicit OperatorSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

OperatorSpec operator+(const OperatorSpec& a, const OperatorSpec& b);

LpVector apply(const OperatorSpec& t, const LpVector& v);

/// N x N matrix of T against e_1..e_N.
Matrix section_matrix(const OperatorSpec& t, std::size_t n);
OperatorSpec finite_section(const OperatorSpec& t, std::size_t n);

/// Diagonal of the N-section when the section is diagonal, without forming
/// the dense matrix.
std::optional<std::vector<double>> diagonal_section(const OperatorSpec& t, std::size_t n);

/// Exact norm of diag(d): l_p -> l_q. p <= q: max |d_n| at a basis vector;
/// p > q: (sum |d_n|^r)^(1/r) with 1/r = 1/q - 1/p at the Hoelder extremal.
NormEstimate diagonal_norm(std::span<const double> d, Exponent p, Exponent q);
NormEstimate diagonal_norm(const DiagonalRule& rule, std::size_t n, Exponent p, Exponent q);

/// Upper limit for dense finite-section work.
inline constexpr std::size_t kDenseSectionCap = 512;

/// Norm of the N-section: closed form for diagonal sections, Boyd iteration
/// for dense ones up to kDenseSectionCap.
NormEstimate section_norm(const OperatorSpec& t, std::size_t n, const SolverConfig& cfg,
                          std::span<const std::vector<double>> warm_starts = {});

/// ||K|| for rank-one K: |scale| ||functional||_{p'} ||range_vector||_q.
double rank_one_norm(const OperatorSpec& k);

}  // namespace normlab
