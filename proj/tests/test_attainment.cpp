#include <gtest/gtest.h>

#include <cmath>

#include "normlab/attainment.hpp"
#include "normlab/error.hpp"

using namespace normlab;

namespace {

const Exponent kP2 = Exponent::domain(2.0);
const Exponent kQ2 = Exponent::range(2.0);

}  // namespace

TEST(Sweep, RatioDiagonal) {
  const auto t = OperatorSpec::diagonal(DiagonalRule::ratio(), kP2, kQ2);
  const std::vector<std::size_t> dims{10, 100, 1000};
  const auto s = sweep_maximizing(t, dims, SolverConfig{});
  EXPECT_EQ(s.values, (std::vector<double>{0.9, 0.99, 0.999}));
  for (std::size_t k = 0; k < dims.size(); ++k) EXPECT_EQ(s.witnesses[k].coord(dims[k]), 1.0);
  EXPECT_FALSE(s.attained_at_finite_dim);
  EXPECT_NEAR(s.extrapolated_sup, 1.0, 1e-12);
}

TEST(Sweep, RankOneIsFlat) {
  const auto t = OperatorSpec::rank_one({1.0}, {1.0}, 1.0, kP2, kQ2);
  const std::vector<std::size_t> dims{1, 2, 3, 4};
  const auto s = sweep_maximizing(t, dims, SolverConfig{});
  for (double v : s.values) EXPECT_EQ(v, 1.0);
  EXPECT_TRUE(s.attained_at_finite_dim);
  EXPECT_EQ(s.extrapolated_sup, 1.0);
  const auto r = attainment_verdict(t, s, kClassificationTol);
  EXPECT_EQ(r.verdict, Verdict::Attained);
  EXPECT_NEAR(r.witness->coord(1), 1.0, 1e-15);
}

TEST(Sweep, RejectsUnsortedDims) {
  const auto t = OperatorSpec::diagonal(DiagonalRule::ratio(), kP2, kQ2);
  const std::vector<std::size_t> dims{10, 10, 100};
  EXPECT_THROW(sweep_maximizing(t, dims, SolverConfig{}), Error);
}

TEST(Sweep, SerialAndParallelIdentical) {
  Matrix a(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) a(i, j) = std::sin(1.0 + i * 6 + j);
  const auto t = OperatorSpec::dense(a, Exponent::domain(3.0), Exponent::range(1.5));
  const std::vector<std::size_t> dims{2, 3, 4, 6};
  SolverConfig s;
  s.exec = Exec::Serial;
  const auto rs = sweep_maximizing(t, dims, s);
  const auto rp = sweep_maximizing(t, dims, SolverConfig{});
  EXPECT_EQ(rs.values, rp.values);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    for (std::size_t i = 0; i < rs.witnesses[k].dim(); ++i) EXPECT_EQ(rs.witnesses[k][i], rp.witnesses[k][i]);
  }
}

TEST(Sweep, InvariantsOnDenseOperator) {
  Matrix a(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) a(i, j) = std::cos(0.7 * i + 1.3 * j);
  const auto t = OperatorSpec::dense(a, kP2, kQ2);
  const std::vector<std::size_t> dims{1, 2, 4, 8};
  const auto s = sweep_maximizing(t, dims, SolverConfig{});
  for (std::size_t k = 1; k < s.values.size(); ++k) EXPECT_GE(s.values[k], s.values[k - 1]);
  EXPECT_GE(s.extrapolated_sup, *std::max_element(s.values.begin(), s.values.end()));
}

TEST(FinalizeSweep, EnvelopeAndAitken) {
  SweepResult s;
  s.dims = {1, 2, 3, 4};
  s.values = {0.5, 0.75, 0.7, 0.875};
  for (std::size_t d : s.dims) s.witnesses.push_back(LpVector::basis(d, kP2, d));
  s.methods.assign(4, Method::ClosedForm);
  finalize_sweep(s);
  EXPECT_EQ(s.values[2], 0.75);
  EXPECT_EQ(s.witnesses[2].coord(2), 1.0);
  // Differences 0 then 0.125: no geometric decay, so no extrapolation.
  EXPECT_EQ(s.extrapolated_sup, 0.875);

  SweepResult g;
  g.dims = {1, 2, 3};
  g.values = {0.5, 0.75, 0.875};  // 1 - 2^-k
  for (std::size_t d : g.dims) g.witnesses.push_back(LpVector::basis(d, kP2, d));
  g.methods.assign(3, Method::ClosedForm);
  finalize_sweep(g);
  EXPECT_NEAR(g.extrapolated_sup, 1.0, 1e-15);
}

TEST(Classify, Families) {
  EXPECT_EQ(classify_weak_null(SequenceFamily::basis_tail(kP2), 1e-4).kind, WeakNullKind::WeaklyNull);
  const double a = 1.0 / std::sqrt(2.0);
  const auto c = classify_weak_null(SequenceFamily::two_spike(a, a, kP2), 1e-4);
  EXPECT_EQ(c.kind, WeakNullKind::NonWeaklyNull);
  EXPECT_NEAR(c.estimate.limit.coord(1), a, 1e-12);
  const double a3 = std::sqrt(0.5), b3 = std::sqrt(0.5);
  const auto m3 = classify_weak_null(SequenceFamily::two_spike(a3, b3, kP2), 1e-4);
  EXPECT_NEAR(m3.estimate.limit.coord(1), 0.7071, 1e-4);
}

TEST(Classify, InconclusiveBand) {
  // ||u|| = 1.5 tol sits between tol and 2 tol.
  const double tol = 1e-4;
  const double a = 1.5 * tol;
  const auto c = classify_weak_null(SequenceFamily::two_spike(a, std::sqrt(1.0 - a * a), kP2), tol);
  EXPECT_EQ(c.kind, WeakNullKind::Inconclusive);
}

TEST(Verdict, RatioDiagonalNotAttained) {
  const auto t = OperatorSpec::diagonal(DiagonalRule::ratio(), kP2, kQ2);
  const auto dims = default_structured_dims();
  const auto r = attainment_verdict(t, sweep_maximizing(t, dims, SolverConfig{}), kClassificationTol);
  EXPECT_EQ(r.verdict, Verdict::NotAttained);
  EXPECT_EQ(r.weak_null->kind, WeakNullKind::WeaklyNull);
}

TEST(Verdict, QuadraticDiagonalAttainedAtFirstBasisVector) {
  const auto p = PolySpec::quadratic_form(Matrix::diagonal(std::vector<double>{1.0, 0.5}));
  const std::vector<std::size_t> dims{2, 4, 8, 16};
  const auto r = attainment_verdict(p, sweep_maximizing(p, dims, SolverConfig{}), kClassificationTol);
  EXPECT_EQ(r.verdict, Verdict::Attained);
  EXPECT_NEAR(std::abs(r.witness->coord(1)), 1.0, 1e-12);
}

TEST(Verdict, PmFamilyGuardHolds) {
  for (unsigned m : {3u, 4u, 5u}) {
    const auto p = PolySpec::pm_family(m);
    const auto dims = default_structured_dims();
    const auto r = attainment_verdict(p, sweep_maximizing(p, dims, SolverConfig{}), kClassificationTol);
    EXPECT_FALSE(r.limit_shortcut_enabled);
    EXPECT_EQ(r.weak_null->kind, WeakNullKind::NonWeaklyNull);
    EXPECT_EQ(r.verdict, Verdict::NotAttained);
  }
}

TEST(Verdict, NonWeaklyNullLimitReachesSupremum) {
  // Operator-side consistency: a non-null weak limit of a maximizing sweep
  // attains the extrapolated supremum.
  const Matrix a = Matrix::from_rows({{1.0, 0.5}, {0.5, 2.0}});
  const auto t = OperatorSpec::sum({OperatorSpec::dense(a, kP2, kQ2),
                                    OperatorSpec::diagonal(DiagonalRule::table({0.0, 0.0, 0.1, 0.2}), kP2, kQ2)});
  const std::vector<std::size_t> dims{2, 3, 4, 5};
  const auto r = attainment_verdict(t, sweep_maximizing(t, dims, SolverConfig{}), kClassificationTol);
  ASSERT_EQ(r.weak_null->kind, WeakNullKind::NonWeaklyNull);
  ASSERT_TRUE(r.normalized_limit_check);
  EXPECT_GE(*r.normalized_limit_check, r.evidence.extrapolated_sup - kClassificationTol);
  EXPECT_EQ(r.verdict, Verdict::Attained);
}

TEST(Verdict, InconclusiveSweepRefusesToConclude) {
  const auto t = OperatorSpec::diagonal(DiagonalRule::ratio(), kP2, kQ2);
  const auto dims = default_structured_dims();
  auto s = sweep_maximizing(t, dims, SolverConfig{});
  s.inconclusive = true;
  EXPECT_EQ(attainment_verdict(t, s, kClassificationTol).verdict, Verdict::Inconclusive);
}

TEST(Verdict, FiniteRankQuadraticStabilises) {
  const auto p = PolySpec::quadratic_form(Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  const std::vector<std::size_t> dims{2, 4, 8, 16};
  const auto s = sweep_maximizing(p, dims, SolverConfig{});
  EXPECT_TRUE(s.attained_at_finite_dim);
  EXPECT_NEAR(s.extrapolated_sup, 1.0, 1e-12);
}
