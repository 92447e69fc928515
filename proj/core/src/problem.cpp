#include "homtcp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace homtcp {

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kSolved: return "Solved";
    case OutcomeKind::kDivergedUnbounded: return "DivergedUnbounded";
  }
  return "Unknown";
}

std::optional<OutcomeKind> parse_outcome(std::string_view text) {
  if (text == "Solved") return OutcomeKind::kSolved;
  if (text == "DivergedUnbounded") return OutcomeKind::kDivergedUnbounded;
  return std::nullopt;
}

TcpProblem::TcpProblem(Tensor a, Vector q_, std::string label_, std::optional<ExpectedOutcome> expected_,
                       std::string name_)
    : tensor(std::move(a)), q(std::move(q_)), label(std::move(label_)), expected(std::move(expected_)),
      name(std::move(name_)) {
  if (static_cast<int>(q.size()) != tensor.dim()) {
    throw DimensionMismatch("TcpProblem: q has length " + std::to_string(q.size()) + ", tensor dim is " +
                            std::to_string(tensor.dim()));
  }
  if (!std::all_of(q.begin(), q.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("TcpProblem: q must be finite");
  }
  if (expected) {
    if (static_cast<int>(expected->x.size()) != tensor.dim() || static_cast<int>(expected->w.size()) != tensor.dim()) {
      throw DimensionMismatch("TcpProblem: expected x and w must have length dim");
    }
  }
}

ComplementarityResidual verify(const TcpProblem& problem, std::span<const double> x) {
  if (static_cast<int>(x.size()) != problem.dim()) {
    throw DimensionMismatch("verify: x has length " + std::to_string(x.size()) + ", problem dim is " +
                            std::to_string(problem.dim()));
  }
  return complementarity_residual(problem.tensor, problem.q, x);
}

const std::vector<TcpProblem>& corpus() {
  static const std::vector<TcpProblem> problems = [] {
    std::vector<TcpProblem> out;
    auto solved = [](Vector x, Vector w, double tol = 1e-3) {
      return ExpectedOutcome{std::move(x), std::move(w), OutcomeKind::kSolved, tol};
    };

    out.emplace_back(Tensor::from_entries(4, 2, {{{1, 1, 1, 2}, -2.0}, {{2, 1, 1, 1}, 1.0}, {{2, 2, 2, 2}, 1.0}}),
                     Vector{1.0, -1.0}, "column sufficient", solved({0.7937, 0.7937}, {0.0, 0.0}), "example1");

    // No finite solution: w2 = 2 x1 x2 + x2^2 + 1 >= 1 forces x2 = 0, and then w1 = -2.
    // The path runs off with x1 -> inf, x1 x2 -> 1, w -> (0, 3).
    out.emplace_back(Tensor::from_entries(3, 2,
                                          {{{1, 1, 2}, 1.0},
                                           {{1, 2, 1}, 1.0},
                                           {{1, 2, 2}, 1.0},
                                           {{2, 1, 2}, 1.0},
                                           {{2, 2, 1}, 1.0},
                                           {{2, 2, 2}, 1.0}}),
                     Vector{-2.0, 1.0}, "column competent",
                     ExpectedOutcome{{1697.278, 0.0}, {0.0, 3.0}, OutcomeKind::kDivergedUnbounded, 5e-2},
                     "example2");

    out.emplace_back(Tensor::from_entries(4, 2, {{{1, 1, 1, 1}, 1.0}, {{1, 1, 1, 2}, -1.0}, {{2, 1, 1, 1}, 1.0}}),
                     Vector{1.0, -1.0}, "column adequate", solved({1.0, 2.0}, {0.0, 0.0}), "example3");

    out.emplace_back(Tensor::from_entries(
                         4, 2, {{{1, 1, 1, 1}, 2.0}, {{1, 1, 1, 2}, 1.0}, {{2, 1, 2, 2}, 4.0}, {{2, 2, 2, 2}, 2.0}}),
                     Vector{-1.0, -1.0}, "P0", solved({0.717516, 0.50706}, {0.0, 0.0}, 2e-3), "example4");

    out.emplace_back(Tensor::from_entries(3, 2,
                                          {{{1, 1, 1}, 1.0},
                                           {{1, 2, 1}, 2.0},
                                           {{1, 2, 2}, 1.0},
                                           {{2, 2, 2}, 1.0},
                                           {{2, 1, 1}, -1.0},
                                           {{2, 2, 1}, -1.0}}),
                     Vector{-1.5, 1.0}, "strictly semipositive; not strong strictly semi positive",
                     solved({0.901703, 0.3230419}, {0.0, 0.0}), "example5");

    out.emplace_back(Tensor::from_entries(3, 2,
                                          {{{1, 1, 1}, 1.0},
                                           {{1, 1, 2}, -3.0},
                                           {{1, 2, 2}, 1.0},
                                           {{2, 2, 2}, 1.0},
                                           {{2, 1, 1}, 1.0},
                                           {{2, 1, 2}, -2.0}}),
                     Vector{-2.0, -1.0},
                     "semipositive; neither strictly semipositive nor strong strictly semipositive",
                     solved({1.414214, 0.0}, {0.0, 1.0}), "example6");
    return out;
  }();
  return problems;
}

LcpEnumeration lcp_brute_force(const TcpProblem& problem) {
  if (problem.order() != 2) throw std::invalid_argument("lcp_brute_force: tensor order must be 2");
  const int n = problem.dim();
  if (n > 4) throw std::invalid_argument("lcp_brute_force: dim must be <= 4");

  const Matrix m = contract_to_matrix(problem.tensor, Vector(static_cast<std::size_t>(n), 0.0));
  const double scale = std::max({1.0, m.max_abs(), max_abs(problem.q)});
  const double feasibility_tol = 1e-12 * scale;

  LcpEnumeration result;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> basic;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) basic.push_back(i);

    Vector x(static_cast<std::size_t>(n), 0.0);
    if (!basic.empty()) {
      const int k = static_cast<int>(basic.size());
      Matrix sub(k, k);
      Vector rhs(static_cast<std::size_t>(k));
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) sub(r, c) = m(basic[r], basic[c]);
        rhs[r] = -problem.q[basic[r]];
      }
      LuFactorization lu(sub);
      if (lu.singular()) {
        result.notes.push_back("partition " + std::to_string(mask) + " skipped: singular basis submatrix");
        continue;
      }
      const Vector xb = lu.solve(rhs);
      for (int r = 0; r < k; ++r) x[basic[r]] = xb[r];
    }

    const Vector w = verify(problem, x).w;
    bool feasible = true;
    for (int i = 0; i < n; ++i) {
      if (x[i] < -feasibility_tol || w[i] < -feasibility_tol) feasible = false;
    }
    if (!feasible) continue;
    for (double& xi : x) xi = std::max(xi, 0.0);

    const bool duplicate = std::any_of(result.solutions.begin(), result.solutions.end(), [&](const Vector& s) {
      for (int i = 0; i < n; ++i)
        if (std::abs(s[i] - x[i]) > 1e-10 * scale) return false;
      return true;
    });
    if (!duplicate) result.solutions.push_back(std::move(x));
  }
  return result;
}

TcpProblem random_problem(int order, int dim, std::uint64_t seed, double entry_scale) {
  if (order < 2 || order > 4) throw std::invalid_argument("random_problem: order must lie in 2..4");
  if (dim < 1 || dim > 4) throw std::invalid_argument("random_problem: dim must lie in 1..4");
  if (!(entry_scale >= 0.0) || !std::isfinite(entry_scale)) {
    throw std::invalid_argument("random_problem: entry_scale must be finite and >= 0");
  }

  std::mt19937_64 engine(seed);
  // 53-bit uniform in [0, 1), then mapped to [-1, 1). Spelled out because
  // std::uniform_real_distribution is implementation-defined.
  auto symmetric_unit = [&engine] {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
  };

  std::vector<double> coefficients(checked_power(dim, order));
  for (double& c : coefficients) c = entry_scale * symmetric_unit();
  Vector q(static_cast<std::size_t>(dim));
  for (double& v : q) v = symmetric_unit();

  return TcpProblem(Tensor::from_dense(order, dim, std::move(coefficients)), std::move(q), "unstructured",
                    std::nullopt, "random-" + std::to_string(seed));
}

}  // namespace homtcp
