#include "homtcp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace homtcp {

Matrix::Matrix(int rows, int cols, double fill) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("Matrix: negative dimension");
  }
  values_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  Matrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) {
      throw std::invalid_argument("Matrix::from_rows: ragged rows");
    }
    std::copy(row.begin(), row.end(), m.row(i++).begin());
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const { return homtcp::max_abs(values_); }

bool Matrix::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("Matrix +=: shape mismatch");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  if (static_cast<int>(x.size()) != a.cols()) {
    throw std::invalid_argument("multiply: vector length mismatch");
  }
  Vector y(static_cast<std::size_t>(a.rows()), 0.0);
  for (int i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a)) {
  if (!lu_.is_square()) throw std::invalid_argument("LuFactorization: matrix not square");
  const int n = lu_.rows();
  perm_.resize(static_cast<std::size_t>(n));
  std::iota(perm_.begin(), perm_.end(), 0);

  const double threshold = kSingularPivotTolerance * lu_.max_abs();
  if (n > 0 && lu_.max_abs() == 0.0) {
    singular_ = true;
    return;
  }
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        pivot = i;
      }
    }
    if (!(best >= threshold) || best == 0.0) {
      singular_ = true;
      return;
    }
    if (pivot != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(pivot).begin());
      std::swap(perm_[k], perm_[pivot]);
      ++swaps_;
    }
    const double inv = 1.0 / lu_(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double factor = lu_(i, k) * inv;
      lu_(i, k) = factor;
      if (factor == 0.0) continue;
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
    }
  }
}

int LuFactorization::determinant_sign() const {
  if (singular_) return 0;
  int sign = (swaps_ % 2 == 0) ? 1 : -1;
  for (int k = 0; k < lu_.rows(); ++k) {
    if (lu_(k, k) < 0.0) sign = -sign;
  }
  return sign;
}

Vector LuFactorization::solve(std::span<const double> b) const {
  const int n = lu_.rows();
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("lu solve: rhs length mismatch");
  if (singular_) throw SingularMatrixError("tangent system singular");

  Vector y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double s = b[perm_[i]];
    for (int j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
    y[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * y[j];
    y[i] = s / lu_(i, i);
  }
  return y;
}

Vector lu_solve(const Matrix& m, std::span<const double> b) {
  if (!m.is_square()) throw std::invalid_argument("lu_solve: matrix not square");
  if (static_cast<int>(b.size()) != m.rows()) {
    throw std::invalid_argument("lu_solve: rhs length mismatch");
  }
  LuFactorization lu(m);
  if (lu.singular()) throw SingularMatrixError("tangent system singular");
  return lu.solve(b);
}

int det_sign(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("det_sign: matrix not square");
  return LuFactorization(m).determinant_sign();
}

Vector pinv_right_apply(const Matrix& m, std::span<const double> b) {
  if (m.rows() > m.cols()) throw std::invalid_argument("pinv_right_apply: matrix must be wide");
  if (static_cast<int>(b.size()) != m.rows()) {
    throw std::invalid_argument("pinv_right_apply: rhs length mismatch");
  }
  const int r = m.rows();
  Matrix gram(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {
      const double g = dot(m.row(i), m.row(j));
      gram(i, j) = g;
      gram(j, i) = g;
    }
  }
  LuFactorization lu(std::move(gram));
  if (lu.singular()) throw SingularMatrixError("corrector system singular");
  const Vector lambda = lu.solve(b);

  Vector y(static_cast<std::size_t>(m.cols()), 0.0);
  for (int i = 0; i < r; ++i) {
    const auto row = m.row(i);
    for (int j = 0; j < m.cols(); ++j) y[j] += row[j] * lambda[i];
  }
  return y;
}

double euclidean_norm(std::span<const double> v) {
  // Scaled accumulation so huge path coordinates don't overflow.
  const double scale = max_abs(v);
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double x : v) {
    const double t = x / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    const double a = std::abs(x);
    if (a > m || std::isnan(a)) m = a;
  }
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace homtcp
