#include "normlab/brezis_lieb.hpp"

#include <algorithm>
#include <cmath>

#include "normlab/error.hpp"

namespace normlab {

namespace {

BrezisLiebResidual split(std::span<const double> member, std::span<const double> limit, double r,
                         std::size_t n) {
  const std::size_t dim = std::max(member.size(), limit.size());
  std::vector<double> diff(dim, 0.0);
  double cross = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double b = i < member.size() ? member[i] : 0.0;
    const double a = i < limit.size() ? limit[i] : 0.0;
    diff[i] = b - a;
    if (a != 0.0 && diff[i] != 0.0) cross += std::abs(a) * std::pow(std::abs(diff[i]), r - 1.0);
  }
  BrezisLiebResidual out;
  out.n = n;
  out.components = {lp_norm_pow(member, r), lp_norm_pow(limit, r), lp_norm_pow(diff, r)};
  out.residual = std::abs(out.components[0] - out.components[1] - out.components[2]);
  out.cross_term = cross;
  return out;
}

}  // namespace

BrezisLiebResidual brezis_lieb_residual_u(const SequenceFamily& fam, const LpVector& u,
                                          std::size_t n) {
  if (!(u.exponent() == fam.exponent())) {
    throw Error(ErrorKind::Configuration, "limit and family live in different l_p spaces");
  }
  const LpVector member = fam.member(n);
  return split(member.coords(), u.coords(), fam.exponent().value(), n);
}

BrezisLiebResidual brezis_lieb_residual_T(const OperatorSpec& t, const SequenceFamily& fam,
                                          const LpVector& u, std::size_t n) {
  if (!(fam.exponent() == t.domain()) || !(u.exponent() == t.domain())) {
    throw Error(ErrorKind::Configuration, "family exponent does not match the operator domain");
  }
  const LpVector image_member = apply(t, fam.member(n));
  const LpVector image_limit = apply(t, u);
  return split(image_member.coords(), image_limit.coords(), t.range().value(), n);
}

}  // namespace normlab
