#include "homtcp/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace homtcp {
namespace {

void require_length(const char* what, std::span<const double> v, int n) {
  if (static_cast<int>(v.size()) != n) {
    throw DimensionMismatch(std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                            std::to_string(v.size()));
  }
}

// (Ahat x^{m-2})^T d
Vector transpose_apply(const Matrix& m, std::span<const double> d) {
  Vector out(static_cast<std::size_t>(m.cols()), 0.0);
  for (int j = 0; j < m.rows(); ++j) {
    const auto row = m.row(j);
    for (int i = 0; i < m.cols(); ++i) out[i] += row[i] * d[j];
  }
  return out;
}

}  // namespace

Anchor::Anchor(Vector x0, Vector w0, Vector z1_0, Vector z2_0)
    : x0_(std::move(x0)), w0_(std::move(w0)), z1_0_(std::move(z1_0)), z2_0_(std::move(z2_0)) {
  const std::size_t n = x0_.size();
  if (n == 0 || w0_.size() != n || z1_0_.size() != n || z2_0_.size() != n) {
    throw DimensionMismatch("Anchor: blocks must be nonempty and of equal length");
  }
  for (const Vector* block : {&x0_, &w0_, &z1_0_, &z2_0_}) {
    for (double v : *block) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("Anchor: every component must be finite and strictly positive");
      }
    }
  }
}

Anchor Anchor::ones(int n) {
  const Vector e(static_cast<std::size_t>(n), 1.0);
  return Anchor(e, e, e, e);
}

Anchor Anchor::from_stacked(std::span<const double> v) {
  if (v.empty() || v.size() % 4 != 0) {
    throw DimensionMismatch("Anchor: stacked vector length must be a positive multiple of 4");
  }
  const std::size_t n = v.size() / 4;
  auto part = [&](std::size_t b) { return Vector(v.begin() + b * n, v.begin() + (b + 1) * n); };
  return Anchor(part(0), part(1), part(2), part(3));
}

Vector Anchor::stacked() const {
  Vector out;
  out.reserve(4 * x0_.size());
  for (const Vector* block : {&x0_, &w0_, &z1_0_, &z2_0_}) out.insert(out.end(), block->begin(), block->end());
  return out;
}

HomotopyPoint::HomotopyPoint(std::span<const double> x, std::span<const double> w, std::span<const double> z1,
                             std::span<const double> z2, double mu)
    : n_(static_cast<int>(x.size())) {
  require_length("HomotopyPoint w", w, n_);
  require_length("HomotopyPoint z1", z1, n_);
  require_length("HomotopyPoint z2", z2, n_);
  data_.reserve(static_cast<std::size_t>(4 * n_ + 1));
  for (auto block : {x, w, z1, z2}) data_.insert(data_.end(), block.begin(), block.end());
  data_.push_back(mu);
}

HomotopyPoint HomotopyPoint::from_augmented(int n, Vector augmented) {
  if (n < 1 || static_cast<int>(augmented.size()) != 4 * n + 1) {
    throw DimensionMismatch("HomotopyPoint: augmented state must have length 4n+1");
  }
  HomotopyPoint p;
  p.n_ = n;
  p.data_ = std::move(augmented);
  return p;
}

HomotopyPoint HomotopyPoint::at_anchor(const Anchor& anchor, double mu) {
  return HomotopyPoint(anchor.x0(), anchor.w0(), anchor.z1_0(), anchor.z2_0(), mu);
}

bool HomotopyPoint::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

HomotopyInstance::HomotopyInstance(Tensor a, Vector q, Anchor anchor)
    : a_(std::move(a)), ahat_(symmetrize(a_)), q_(std::move(q)), anchor_(std::move(anchor)) {
  require_length("HomotopyInstance q", q_, a_.dim());
  if (anchor_.dim() != a_.dim()) throw DimensionMismatch("HomotopyInstance: anchor dim does not match tensor");
}

void HomotopyInstance::check_point(const HomotopyPoint& p) const {
  if (p.dim() != dim()) {
    throw DimensionMismatch("homotopy point dim " + std::to_string(p.dim()) + " does not match instance dim " +
                            std::to_string(dim()));
  }
}

Vector HomotopyInstance::eval_H(const HomotopyPoint& p) const {
  check_point(p);
  const int n = dim();
  const double mu = p.mu();
  const double s = 1.0 - mu;
  const double mm1 = static_cast<double>(order() - 1);
  const auto x = p.x(), w = p.w(), z1 = p.z1(), z2 = p.z2();
  const auto &x0 = anchor_.x0(), &w0 = anchor_.w0(), &z10 = anchor_.z1_0(), &z20 = anchor_.z2_0();

  Vector d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[i] = x[i] - z2[i];
  const Vector mt_d = transpose_apply(contract_to_matrix(ahat_, x), d);
  const Vector ax = contract_to_vector(a_, x);

  Vector h(static_cast<std::size_t>(4 * n));
  for (int i = 0; i < n; ++i) {
    h[i] = s * (w[i] - z1[i] + mm1 * mt_d[i]) + mu * (x[i] - x0[i]);
    h[n + i] = z1[i] * x[i] - mu * z10[i] * x0[i];
    h[2 * n + i] = z2[i] * w[i] - mu * z20[i] * w0[i] + s * x[i] * w[i];
    h[3 * n + i] = w[i] - s * (ax[i] + q_[i]) - mu * w0[i];
  }
  return h;
}

Matrix HomotopyInstance::eval_dH_dv(const HomotopyPoint& p) const {
  check_point(p);
  const int n = dim();
  const int m = order();
  const double mu = p.mu();
  const double s = 1.0 - mu;
  const double mm1 = static_cast<double>(m - 1);
  const auto x = p.x(), w = p.w(), z1 = p.z1(), z2 = p.z2();

  const Matrix mx = contract_to_matrix(ahat_, x);  // (Ahat x^{m-2})_{ji}
  // Curvature of (Ahat x^{m-2})^T (x - z2) in x:
  // G_{ik} = (m-2) sum_j T_{jik} (x_j - z2_j).
  Matrix g(n, n);
  if (m > 2) {
    const Tensor t = second_level_contraction(ahat_, x);
    const auto tc = t.coefficients();
    const double mm2 = static_cast<double>(m - 2);
    for (int j = 0; j < n; ++j) {
      const double dj = x[j] - z2[j];
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) g(i, k) += mm2 * tc[static_cast<std::size_t>((j * n + i) * n + k)] * dj;
    }
  }

  Matrix jac(4 * n, 4 * n);
  const int X = 0, W = n, Z1 = 2 * n, Z2 = 3 * n;
  for (int i = 0; i < n; ++i) {
    // Block row 1.
    for (int k = 0; k < n; ++k) {
      jac(i, X + k) = s * mm1 * (mx(k, i) + g(i, k));
      jac(i, Z2 + k) = -s * mm1 * mx(k, i);
    }
    jac(i, X + i) += mu;
    jac(i, W + i) = s;
    jac(i, Z1 + i) = -s;

    // Block row 2.
    jac(n + i, X + i) = z1[i];
    jac(n + i, Z1 + i) = x[i];

    // Block row 3.
    jac(2 * n + i, X + i) = s * w[i];
    jac(2 * n + i, W + i) = z2[i] + s * x[i];
    jac(2 * n + i, Z2 + i) = w[i];

    // Block row 4.
    for (int k = 0; k < n; ++k) jac(3 * n + i, X + k) = -s * mm1 * mx(i, k);
    jac(3 * n + i, W + i) = 1.0;
  }
  return jac;
}

Vector HomotopyInstance::eval_dH_dmu(const HomotopyPoint& p) const {
  check_point(p);
  const int n = dim();
  const double mm1 = static_cast<double>(order() - 1);
  const auto x = p.x(), w = p.w(), z1 = p.z1(), z2 = p.z2();
  const auto &x0 = anchor_.x0(), &w0 = anchor_.w0(), &z10 = anchor_.z1_0(), &z20 = anchor_.z2_0();

  Vector d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[i] = x[i] - z2[i];
  const Vector mt_d = transpose_apply(contract_to_matrix(ahat_, x), d);
  const Vector ax = contract_to_vector(a_, x);

  Vector out(static_cast<std::size_t>(4 * n));
  for (int i = 0; i < n; ++i) {
    out[i] = (x[i] - x0[i]) - (w[i] - z1[i] + mm1 * mt_d[i]);
    out[n + i] = -z10[i] * x0[i];
    out[2 * n + i] = -z20[i] * w0[i] - x[i] * w[i];
    out[3 * n + i] = (ax[i] + q_[i]) - w0[i];
  }
  return out;
}

Matrix HomotopyInstance::eval_full_jacobian(const HomotopyPoint& p) const {
  const Matrix dv = eval_dH_dv(p);
  const Vector dmu = eval_dH_dmu(p);
  const int rows = dv.rows();
  Matrix full(rows, rows + 1);
  for (int i = 0; i < rows; ++i) {
    std::copy(dv.row(i).begin(), dv.row(i).end(), full.row(i).begin());
    full(i, rows) = dmu[i];
  }
  return full;
}

Vector HomotopyInstance::eval_limit_system(std::span<const double> x, std::span<const double> w,
                                           std::span<const double> z1, std::span<const double> z2) const {
  const int n = dim();
  require_length("eval_limit_system x", x, n);
  require_length("eval_limit_system w", w, n);
  require_length("eval_limit_system z1", z1, n);
  require_length("eval_limit_system z2", z2, n);
  const double mm1 = static_cast<double>(order() - 1);

  Vector d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[i] = x[i] - z2[i];
  const Vector mt_d = transpose_apply(contract_to_matrix(ahat_, x), d);
  const Vector ax = contract_to_vector(a_, x);

  Vector h(static_cast<std::size_t>(4 * n));
  for (int i = 0; i < n; ++i) {
    h[i] = w[i] - z1[i] + mm1 * mt_d[i];
    h[n + i] = z1[i] * x[i];
    h[2 * n + i] = z2[i] * w[i] + x[i] * w[i];
    h[3 * n + i] = w[i] - (ax[i] + q_[i]);
  }
  return h;
}

}  // namespace homtcp
