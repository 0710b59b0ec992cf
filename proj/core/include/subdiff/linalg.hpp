#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace subdiff {

/// Dense row-major matrix of doubles.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transposed() const;

  /// Largest absolute entry.
  double max_abs() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// ||A||_inf (max absolute row sum).
double norm_inf(const Matrix& a);

/// LU factorization with partial pivoting of a square matrix.
class LuFactorization {
public:
  /// Throws NumericalError if a pivot vanishes exactly.
  explicit LuFactorization(Matrix a);

  std::size_t size() const noexcept { return lu_.rows(); }

  /// Solves A x = b in place.
  void solve_in_place(std::span<double> b) const;
  std::vector<double> solve(std::span<const double> b) const;

  /// Reciprocal condition number in the 1-norm, from an explicit inverse.
  /// Intended for the small systems used here.
  double rcond() const;

private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double norm1_ = 0.0;
};

/// Eigenvalues and first eigenvector components of a symmetric tridiagonal
/// matrix, via implicit QL with Wilkinson shifts. Values are ascending.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<double> first_components;
};

/// `diag` has length n, `offdiag` length n-1 (offdiag[i] couples i and i+1).
TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> offdiag);

/// Full eigendecomposition A = V diag(values) V^T of a dense symmetric matrix.
struct SymmetricEigen {
  std::vector<double> values; ///< ascending
  Matrix vectors;             ///< column k is the eigenvector of values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// rel_tol * ||A||_F. Throws NumericalError after max_sweeps.
SymmetricEigen jacobi_eigen(const Matrix& a, double rel_tol = 1e-13, int max_sweeps = 30);

} // namespace subdiff
