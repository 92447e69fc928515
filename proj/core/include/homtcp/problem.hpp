#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homtcp/linalg.hpp"
#include "homtcp/residual.hpp"
#include "homtcp/tensor.hpp"

namespace homtcp {

enum class OutcomeKind {
  kSolved,
  kDivergedUnbounded,
};

std::string_view to_string(OutcomeKind kind);
std::optional<OutcomeKind> parse_outcome(std::string_view text);

/// Known result for a problem: the printed solution (or asymptote, for a
/// divergent case) and the componentwise tolerance it is compared at.
struct ExpectedOutcome {
  Vector x;
  Vector w;
  OutcomeKind outcome = OutcomeKind::kSolved;
  double tolerance = 1e-3;

  friend bool operator==(const ExpectedOutcome&, const ExpectedOutcome&) = default;
};

/// TCP(q, A): find x >= 0 with w = A x^{m-1} + q >= 0 and x^T w = 0.
struct TcpProblem {
  TcpProblem(Tensor a, Vector q_, std::string label_ = {}, std::optional<ExpectedOutcome> expected_ = std::nullopt,
             std::string name_ = {});

  Tensor tensor;
  Vector q;
  std::string label;  // descriptive tensor-class tag; never checked
  std::optional<ExpectedOutcome> expected;
  std::string name;

  int dim() const { return tensor.dim(); }
  int order() const { return tensor.order(); }

  friend bool operator==(const TcpProblem&, const TcpProblem&) = default;
};

ComplementarityResidual verify(const TcpProblem& problem, std::span<const double> x);

/// The six reference problems, in order example1 .. example6.
const std::vector<TcpProblem>& corpus();

struct LcpEnumeration {
  std::vector<Vector> solutions;        // distinct solutions
  std::vector<std::string> notes;       // skipped (singular) partitions
};

/// Enumerates all 2^n complementary partitions of an order-2 problem with
/// n <= 4 and returns every exact solution found.
LcpEnumeration lcp_brute_force(const TcpProblem& problem);

/// Name of the generator behind random_problem.
inline constexpr std::string_view kRandomProblemAlgorithm = "mt19937_64/u53-symmetric";

/// Deterministic dense problem: tensor entries uniform in [-entry_scale, entry_scale)
/// in row-major order, then q uniform in [-1, 1). Labeled "unstructured".
TcpProblem random_problem(int order, int dim, std::uint64_t seed, double entry_scale = 1.0);

}  // namespace homtcp
