#pragma once

// Small dense kernels for the homotopy Jacobians: LU with partial pivoting,
// determinant sign, and the Moore-Penrose right inverse of a wide matrix.
// Sizes here are at most a few dozen, so everything is plain row-major.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace homtcp {

using Vector = std::vector<double>;

/// Raised when a pivot falls below the relative singularity threshold.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);

  static Matrix identity(int n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(int r, int c) { return values_[index(r, c)]; }
  double operator()(int r, int c) const { return values_[index(r, c)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> row(int r) {
    return {values_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  std::span<const double> row(int r) const {
    return {values_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }

  Matrix transpose() const;
  double max_abs() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const double> x);

/// Relative pivot threshold: a pivot below kSingularPivotTolerance * max|entry|
/// marks the matrix singular.
inline constexpr double kSingularPivotTolerance = 1e-13;

/// In-place LU factorization with partial pivoting, P*A = L*U.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a);

  bool singular() const { return singular_; }
  /// Sign of det(A) from the pivot product and the permutation parity; 0 when singular.
  int determinant_sign() const;
  /// Throws SingularMatrixError when the factorization is singular.
  Vector solve(std::span<const double> b) const;

 private:
  Matrix lu_;
  std::vector<int> perm_;
  int swaps_ = 0;
  bool singular_ = false;
};

/// Solves M y = b. Throws SingularMatrixError("tangent system singular") on a
/// singular-to-tolerance matrix.
Vector lu_solve(const Matrix& m, std::span<const double> b);

int det_sign(const Matrix& m);

/// y = M^T (M M^T)^{-1} b for a wide full-row-rank M: the minimum-norm
/// solution of M y = b. Throws SingularMatrixError("corrector system singular").
Vector pinv_right_apply(const Matrix& m, std::span<const double> b);

double euclidean_norm(std::span<const double> v);
double max_abs(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace homtcp
