#pragma once

// Homogeneous polynomials on l_2: quadratic forms (optionally with an infinite
// diagonal rule), the degree-m family
//   P_m(x) = x_1^m + m x_1^(m-2) sum_{j>=2} (j/(j+1)) x_j^2,
// and the l_2-valued coupling P(x) = x_1 (x_2/2, 2x_3/3, 3x_4/4, ...).

#include <memory>
#include <variant>

#include "normlab/lp_space.hpp"
#include "normlab/matrix.hpp"
#include "normlab/norm_estimate.hpp"
#include "normlab/operators.hpp"

namespace normlab {

class PolySpec {
 public:
  enum class Shape { QuadraticForm, PmFamily, VectorCoupling };

  /// P(x) = sum_ij A_ij x_i x_j + sum_n d_n x_n^2. A is symmetrised.
  static PolySpec quadratic_form(const Matrix& a, DiagonalRule diagonal = DiagonalRule::zero());
  static PolySpec pm_family(unsigned m);
  static PolySpec vector_coupling();

  Shape shape() const { return shape_; }
  unsigned degree() const { return degree_; }
  bool scalar_valued() const { return shape_ != Shape::VectorCoupling; }
  /// Finite-type quadratic forms (no infinite diagonal tail, or a vanishing
  /// one) are weak-to-norm continuous.
  bool completely_continuous() const;

  const Matrix& matrix() const { return *matrix_; }
  const DiagonalRule& diagonal() const { return *diagonal_; }

  std::string describe() const;

 private:
  PolySpec(Shape s, unsigned m) : shape_(s), degree_(m) {}
  Shape shape_;
  unsigned degree_;
  std::shared_ptr<const Matrix> matrix_;
  std::shared_ptr<const DiagonalRule> diagonal_;
};

/// Sum of a quadratic form and a finite-type quadratic perturbation.
PolySpec perturb(const PolySpec& p, const PolySpec& k);

using PolyValue = std::variant<double, LpVector>;

PolyValue eval(const PolySpec& p, const LpVector& x);
/// |P(x)| for scalar shapes, ||P(x)||_2 for the vector coupling.
double magnitude(const PolySpec& p, const LpVector& x);

/// 2((m-2)/(m-1))^((m-2)/2).
double pm_norm_closed_form(unsigned m);

/// sup |P_m| over the unit sphere of the N-truncation. For fixed t = x_1^2 the
/// remaining mass sits on coordinate N, leaving
///   g(t) = t^(m/2) + m t^((m-2)/2) (N/(N+1)) (1-t),
/// maximised by golden-section search.
NormEstimate pm_norm_numeric(unsigned m, std::size_t n);

/// sup ||P(x)||_2 for the vector coupling on the N-truncation via the same
/// two-spike reduction; equals (N-1)/(2N).
NormEstimate vector_coupling_norm(std::size_t n);
/// Generic projected-ascent route for the same quantity (small N only).
NormEstimate vector_coupling_norm_ascent(std::size_t n, const SolverConfig& cfg);

/// u_P for a quadratic form: the symmetric matrix itself as an operator
/// l_2 -> l_2 (plus the diagonal rule when present).
OperatorSpec linearize_quadratic(const PolySpec& p);

struct BanachEqualityReport {
  double poly_norm = 0.0;           // max |eigenvalue|
  double poly_norm_ascent = 0.0;    // max |x^T A x| by projected ascent
  double bilinear_norm = 0.0;       // sqrt(lambda_max(A^T A))
  double bilinear_alternating = 0.0;  // max x^T A y by alternating maximisation
  double gap = 0.0;                 // |poly_norm - bilinear_norm|
  LpVector witness = LpVector::zeros(0, Exponent::domain(2.0));  // extreme eigenvector
};

BanachEqualityReport banach_equality_check(const Matrix& a, const SolverConfig& cfg);

/// Norm of P on the N-truncation, dispatching on shape.
NormEstimate polynomial_section_norm(const PolySpec& p, std::size_t n, const SolverConfig& cfg);

}  // namespace normlab
