#pragma once

// Residuals of the splitting identities
//   ||u^n||_p^p   = ||u||_p^p + ||u^n - u||_p^p + o(1)
//   ||T u^n||_q^q = ||T u||_q^q + ||T(u^n - u)||_q^q + o(1)
// along a sequence family with weak limit u.

#include <array>

#include "normlab/lp_space.hpp"
#include "normlab/operators.hpp"

namespace normlab {

struct BrezisLiebResidual {
  std::size_t n = 0;
  double residual = 0.0;
  /// sum_i |a_i| |b_i - a_i|^(r-1) with a the limit image and b the member
  /// image (identity operator for the domain version).
  double cross_term = 0.0;
  /// (||image of u^n||^r, ||image of u||^r, ||image of (u^n - u)||^r)
  std::array<double, 3> components{};
};

BrezisLiebResidual brezis_lieb_residual_u(const SequenceFamily& fam, const LpVector& u,
                                          std::size_t n);

BrezisLiebResidual brezis_lieb_residual_T(const OperatorSpec& t, const SequenceFamily& fam,
                                          const LpVector& u, std::size_t n);

}  // namespace normlab
