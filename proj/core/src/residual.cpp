#include "homtcp/residual.hpp"

#include <algorithm>
#include <cmath>

namespace homtcp {

double ComplementarityResidual::worst() const { return std::max({x_negativity, w_negativity, gap}); }

ComplementarityResidual complementarity_residual(const Tensor& a, std::span<const double> q,
                                                 std::span<const double> x) {
  if (static_cast<int>(q.size()) != a.dim()) {
    throw DimensionMismatch("complementarity_residual: q length does not match tensor dim");
  }
  ComplementarityResidual r;
  r.w = contract_to_vector(a, x);
  for (std::size_t i = 0; i < r.w.size(); ++i) r.w[i] += q[i];

  double min_x = 0.0;
  double min_w = 0.0;
  double xtw = 0.0;
  r.component_gaps.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    min_x = std::min(min_x, x[i]);
    min_w = std::min(min_w, r.w[i]);
    xtw += x[i] * r.w[i];
    r.component_gaps[i] = std::abs(x[i] * r.w[i]);
  }
  r.x_negativity = min_x < 0.0 ? -min_x : 0.0;
  r.w_negativity = min_w < 0.0 ? -min_w : 0.0;
  r.gap = std::abs(xtw);
  return r;
}

}  // namespace homtcp
