#pragma once

#include <span>
#include <vector>

#include "homtcp/linalg.hpp"
#include "homtcp/tensor.hpp"

namespace homtcp {

/// How far a candidate x is from solving x >= 0, w = A x^{m-1} + q >= 0, x^T w = 0.
struct ComplementarityResidual {
  double x_negativity = 0.0;  // max(0, -min_i x_i)
  double w_negativity = 0.0;  // max(0, -min_i w_i)
  double gap = 0.0;           // |x^T w|
  Vector w;                   // A x^{m-1} + q
  Vector component_gaps;      // |x_i w_i|

  double worst() const;
  bool within(double negativity_tol, double gap_tol) const {
    return x_negativity <= negativity_tol && w_negativity <= negativity_tol && gap <= gap_tol;
  }
};

ComplementarityResidual complementarity_residual(const Tensor& a, std::span<const double> q,
                                                 std::span<const double> x);

}  // namespace homtcp
