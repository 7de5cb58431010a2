#include <gtest/gtest.h>

#include "normlab/error.hpp"
#include "normlab/matrix.hpp"

using namespace normlab;

TEST(Matrix, MultiplyZeroExtendsShortInput) {
  const Matrix a = Matrix::from_rows({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}});
  const auto y = a.multiply(std::vector<double>{1.0});
  EXPECT_EQ(y, (std::vector<double>{1.0, 4.0}));
  const auto z = a.multiply_transpose(std::vector<double>{1.0, 1.0});
  EXPECT_EQ(z, (std::vector<double>{5.0, 7.0, 9.0}));
}

TEST(Matrix, SymmetrizedAndChecks) {
  const Matrix a = Matrix::from_rows({{1.0, 2.0}, {0.0, 1.0}});
  EXPECT_FALSE(a.is_symmetric(1e-12));
  const Matrix s = a.symmetrized();
  EXPECT_TRUE(s.is_symmetric(0.0));
  EXPECT_DOUBLE_EQ(s(0, 1), 1.0);
  EXPECT_THROW(Matrix(2, 3).symmetrized(), Error);
}

TEST(Matrix, LeadingBlockPads) {
  const Matrix a = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const Matrix b = a.leading_block(3);
  EXPECT_EQ(b.rows(), 3u);
  EXPECT_DOUBLE_EQ(b(1, 1), 4.0);
  EXPECT_DOUBLE_EQ(b(2, 2), 0.0);
  EXPECT_DOUBLE_EQ(a.leading_block(1)(0, 0), 1.0);
}

TEST(Matrix, SumPadsToLargerSize) {
  const Matrix s = Matrix::identity(1) + Matrix::identity(2);
  EXPECT_EQ(s.rows(), 2u);
  EXPECT_DOUBLE_EQ(s(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(s(1, 1), 1.0);
}

TEST(Matrix, ProductAndTranspose) {
  const Matrix a = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const Matrix p = a * a.transpose();
  EXPECT_DOUBLE_EQ(p(0, 0), 5.0);
  EXPECT_DOUBLE_EQ(p(0, 1), 11.0);
  EXPECT_DOUBLE_EQ(a.trace(), 5.0);
  EXPECT_DOUBLE_EQ(a.max_abs(), 4.0);
}
