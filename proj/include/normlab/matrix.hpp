#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace normlab {

/// Small dense row-major matrix for finite sections (dense work is capped at
/// a few hundred rows, so no BLAS).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const { return data_; }

  // Inputs shorter than cols() are zero-extended; longer inputs must be zero
  // beyond cols() (checked by callers that care).
  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> multiply_transpose(std::span<const double> y) const;

  Matrix transpose() const;
  Matrix symmetrized() const;
  bool is_symmetric(double tol) const;
  double frobenius() const;
  double max_abs() const;
  double trace() const;

  /// Leading n x n block, zero-padded when n exceeds the stored size.
  Matrix leading_block(std::size_t n) const;

  bool is_diagonal() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace normlab
