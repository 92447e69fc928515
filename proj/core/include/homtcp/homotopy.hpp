#pragma once

// The four-block homotopy map
//
//   B1 = (1-mu)(w - z1 + (m-1)(Ahat x^{m-2})^T (x - z2)) + mu (x - x0)
//   B2 = Z1 x - mu Z1_0 x0
//   B3 = Z2 w - mu Z2_0 w0 + (1-mu) X w
//   B4 = w - (1-mu)(A x^{m-1} + q) - mu w0
//
// over the augmented state (x, w, z1, z2, mu). At mu = 1 the anchor is the unique
// zero; at mu = 0 the system's nonnegative zeros carry solutions of TCP(q, A).

#include <span>
#include <vector>

#include "homtcp/linalg.hpp"
#include "homtcp/tensor.hpp"

namespace homtcp {

/// Strictly positive starting point (x0, w0, z1_0, z2_0).
class Anchor {
 public:
  Anchor(Vector x0, Vector w0, Vector z1_0, Vector z2_0);

  static Anchor ones(int n);
  /// Splits a 4n vector laid out as (x0, w0, z1_0, z2_0).
  static Anchor from_stacked(std::span<const double> v);

  int dim() const { return static_cast<int>(x0_.size()); }
  const Vector& x0() const { return x0_; }
  const Vector& w0() const { return w0_; }
  const Vector& z1_0() const { return z1_0_; }
  const Vector& z2_0() const { return z2_0_; }
  Vector stacked() const;

 private:
  Vector x0_, w0_, z1_0_, z2_0_;
};

/// Augmented state (x, w, z1, z2, mu) stored contiguously as a 4n+1 vector.
/// mu is not range-checked: predictor and corrector iterates can leave [0, 1]
/// before the tracer's gate rejects them.
class HomotopyPoint {
 public:
  HomotopyPoint() = default;
  HomotopyPoint(std::span<const double> x, std::span<const double> w, std::span<const double> z1,
                std::span<const double> z2, double mu);
  static HomotopyPoint from_augmented(int n, Vector augmented);
  static HomotopyPoint at_anchor(const Anchor& anchor, double mu = 1.0);

  int dim() const { return n_; }
  std::span<const double> x() const { return block(0); }
  std::span<const double> w() const { return block(1); }
  std::span<const double> z1() const { return block(2); }
  std::span<const double> z2() const { return block(3); }
  /// (x, w, z1, z2) without mu.
  std::span<const double> v() const { return {data_.data(), static_cast<std::size_t>(4 * n_)}; }
  double mu() const { return data_.back(); }

  const Vector& augmented() const { return data_; }
  bool all_finite() const;

  friend bool operator==(const HomotopyPoint&, const HomotopyPoint&) = default;

 private:
  std::span<const double> block(int b) const {
    return {data_.data() + static_cast<std::size_t>(b * n_), static_cast<std::size_t>(n_)};
  }

  int n_ = 0;
  Vector data_;
};

/// Problem data plus anchor. Immutable; the symmetrized tensor is cached.
class HomotopyInstance {
 public:
  HomotopyInstance(Tensor a, Vector q, Anchor anchor);

  const Tensor& tensor() const { return a_; }
  const SymmetrizedTensor& symmetrized() const { return ahat_; }
  const Vector& q() const { return q_; }
  const Anchor& anchor() const { return anchor_; }
  int dim() const { return a_.dim(); }
  int order() const { return a_.order(); }
  int state_size() const { return 4 * dim(); }

  /// H(v, v0, mu), blocks ordered (B1, B2, B3, B4).
  Vector eval_H(const HomotopyPoint& p) const;
  /// dH/dv, 4n x 4n.
  Matrix eval_dH_dv(const HomotopyPoint& p) const;
  /// dH/dmu, length 4n.
  Vector eval_dH_dmu(const HomotopyPoint& p) const;
  /// [dH/dv | dH/dmu], 4n x (4n+1).
  Matrix eval_full_jacobian(const HomotopyPoint& p) const;
  /// The mu = 0 system; identical to eval_H at mu = 0.
  Vector eval_limit_system(std::span<const double> x, std::span<const double> w, std::span<const double> z1,
                           std::span<const double> z2) const;

 private:
  void check_point(const HomotopyPoint& p) const;

  Tensor a_;
  SymmetrizedTensor ahat_;
  Vector q_;
  Anchor anchor_;
};

}  // namespace homtcp
