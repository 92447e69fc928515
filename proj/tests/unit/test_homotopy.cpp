#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "homtcp/homotopy.hpp"
#include "homtcp/problem.hpp"
#include "homtcp/tracer.hpp"
#include "oracles.hpp"

using namespace homtcp;

namespace {

HomotopyInstance instance(std::size_t k, Anchor anchor) {
  const TcpProblem& p = corpus().at(k);
  return HomotopyInstance(p.tensor, p.q, std::move(anchor));
}
HomotopyInstance instance(std::size_t k) { return instance(k, Anchor::ones(corpus().at(k).dim())); }

HomotopyPoint random_interior_point(std::mt19937_64& rng, int n) {
  Vector aug = oracle::uniform_vector(rng, 4 * n, 0.5, 2.0);
  aug.push_back(oracle::uniform_vector(rng, 1, 0.05, 0.95)[0]);
  return HomotopyPoint::from_augmented(n, std::move(aug));
}

Anchor random_anchor(std::mt19937_64& rng, int n) {
  return Anchor::from_stacked(oracle::uniform_vector(rng, 4 * n, 0.1, 10.0));
}

Matrix fd_dH_dv(const HomotopyInstance& inst, const HomotopyPoint& p) {
  const int n = p.dim();
  const Vector v(p.v().begin(), p.v().end());
  return oracle::central_difference(
      [&](const std::vector<double>& y) {
        Vector aug = y;
        aug.push_back(p.mu());
        return inst.eval_H(HomotopyPoint::from_augmented(n, aug));
      },
      v, 1e-6);
}

Vector fd_dH_dmu(const HomotopyInstance& inst, const HomotopyPoint& p) {
  const int n = p.dim();
  const Matrix fd = oracle::central_difference(
      [&](const std::vector<double>& mu) {
        Vector aug(p.v().begin(), p.v().end());
        aug.push_back(mu[0]);
        return inst.eval_H(HomotopyPoint::from_augmented(n, aug));
      },
      Vector{p.mu()}, 1e-6);
  Vector out(static_cast<std::size_t>(fd.rows()));
  for (int i = 0; i < fd.rows(); ++i) out[i] = fd(i, 0);
  return out;
}

}  // namespace

TEST(Anchor, RejectsNonPositiveOrMismatched) {
  EXPECT_THROW(Anchor({1, 0}, {1, 1}, {1, 1}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(Anchor({1, -1}, {1, 1}, {1, 1}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(Anchor({1, 1}, {1}, {1, 1}, {1, 1}), DimensionMismatch);
  EXPECT_THROW(Anchor::from_stacked(Vector{1, 1, 1}), DimensionMismatch);
  const Anchor a = Anchor::from_stacked(Vector{1, 2, 3, 4, 5, 6, 7, 8});
  EXPECT_EQ(a.z1_0(), (Vector{5, 6}));
  EXPECT_EQ(a.stacked(), (Vector{1, 2, 3, 4, 5, 6, 7, 8}));
}

TEST(EvalH, VanishesAtAnchorForRandomAnchors) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    for (std::size_t k = 0; k < corpus().size(); ++k) {
      const HomotopyInstance inst = instance(k, random_anchor(rng, 2));
      EXPECT_LE(max_abs(inst.eval_H(HomotopyPoint::at_anchor(inst.anchor(), 1.0))), 1e-14);
    }
  }
}

TEST(EvalH, KnownSolutionZeroesTheLimit) {
  const HomotopyInstance inst = instance(2);
  const HomotopyPoint p(Vector{1, 2}, Vector{0, 0}, Vector{0, 0}, Vector{1, 2}, 0.0);
  EXPECT_LE(max_abs(inst.eval_H(p)), 1e-15);
  EXPECT_LE(max_abs(inst.eval_limit_system(Vector{1, 2}, Vector{0, 0}, Vector{0, 0}, Vector{1, 2})), 1e-15);
}

TEST(EvalH, MatchesStraightFromFormulaEvaluation) {
  std::mt19937_64 rng(19);
  for (std::size_t k = 0; k < corpus().size(); ++k) {
    const HomotopyInstance inst = instance(k, random_anchor(rng, 2));
    for (int trial = 0; trial < 20; ++trial) {
      const HomotopyPoint p = random_interior_point(rng, 2);
      const Vector h = inst.eval_H(p), ref = oracle::naive_H(inst, p);
      for (std::size_t i = 0; i < h.size(); ++i) EXPECT_NEAR(h[i], ref[i], 1e-12 * (1 + std::abs(ref[i])));
    }
  }
}

TEST(EvalH, DimensionMismatch) {
  const HomotopyInstance inst = instance(0);
  const HomotopyPoint p = HomotopyPoint::at_anchor(Anchor::ones(3));
  EXPECT_THROW(inst.eval_H(p), DimensionMismatch);
  EXPECT_THROW(inst.eval_dH_dv(p), DimensionMismatch);
  EXPECT_THROW(inst.eval_dH_dmu(p), DimensionMismatch);
  EXPECT_THROW(HomotopyInstance(corpus()[0].tensor, Vector{1, 2, 3}, Anchor::ones(2)), DimensionMismatch);
  EXPECT_THROW(HomotopyInstance(corpus()[0].tensor, Vector{1, 2}, Anchor::ones(3)), DimensionMismatch);
}

TEST(EvalDHDv, MatchesFiniteDifferences) {
  std::mt19937_64 rng(23);
  for (std::size_t k = 0; k < corpus().size(); ++k) {
    const HomotopyInstance inst = instance(k, random_anchor(rng, 2));
    for (int trial = 0; trial < 50; ++trial) {
      const HomotopyPoint p = random_interior_point(rng, 2);
      ASSERT_LE(oracle::max_relative_error(inst.eval_dH_dv(p), fd_dH_dv(inst, p)), 1e-5) << corpus()[k].name;
    }
  }
}

TEST(EvalDHDv, RandomHigherOrderTensorsMatchFiniteDifferences) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 4, n = 1 + (trial / 4) % 3;
    const HomotopyInstance inst(oracle::random_tensor(rng, m, n), oracle::uniform_vector(rng, n, -1, 1),
                                random_anchor(rng, n));
    const HomotopyPoint p = random_interior_point(rng, n);
    EXPECT_LE(oracle::max_relative_error(inst.eval_dH_dv(p), fd_dH_dv(inst, p)), 1e-5) << "m=" << m;
  }
}

TEST(EvalDHDv, BlockStructureAtMuOne) {
  std::mt19937_64 rng(31);
  const HomotopyInstance inst = instance(0);
  const int n = 2;
  const HomotopyPoint p = [&] {
    Vector aug = oracle::uniform_vector(rng, 4 * n, 0.5, 2.0);
    aug.push_back(1.0);
    return HomotopyPoint::from_augmented(n, aug);
  }();
  const Matrix j = inst.eval_dH_dv(p);
  Matrix expected(4 * n, 4 * n);
  for (int i = 0; i < n; ++i) {
    expected(i, i) = 1.0;
    expected(n + i, i) = p.z1()[i];
    expected(n + i, 2 * n + i) = p.x()[i];
    expected(2 * n + i, n + i) = p.z2()[i];
    expected(2 * n + i, 3 * n + i) = p.w()[i];
    expected(3 * n + i, n + i) = 1.0;
  }
  EXPECT_EQ(j, expected);
}

TEST(EvalDHDv, DeterminantPositiveAtMuOne) {
  std::mt19937_64 rng(37);
  for (std::size_t k = 0; k < corpus().size(); ++k) {
    for (int trial = 0; trial < 50; ++trial) {
      const HomotopyInstance inst = instance(k, random_anchor(rng, 2));
      Vector aug = oracle::uniform_vector(rng, 8, 0.01, 50.0);
      aug.push_back(1.0);
      EXPECT_EQ(det_sign(inst.eval_dH_dv(HomotopyPoint::from_augmented(2, aug))), 1);
    }
  }
}

TEST(EvalDHDv, LinearCaseFirstBlock) {
  const Tensor m2 = Tensor::from_dense(2, 2, {1, 3, -2, 4});
  const HomotopyInstance inst(m2, Vector{1, 1}, Anchor::ones(2));
  const double mu = 0.3;
  const HomotopyPoint p(Vector{0.7, 1.2}, Vector{1, 2}, Vector{0.5, 0.5}, Vector{2, 3}, mu);
  const Matrix j = inst.eval_dH_dv(p);
  const SymmetrizedTensor s = symmetrize(m2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      const double expected = (1 - mu) * s.tensor().at({k + 1, i + 1}) + (i == k ? mu : 0.0);
      EXPECT_DOUBLE_EQ(j(i, k), expected);
    }
}

TEST(EvalDHDmu, MatchesFiniteDifferences) {
  std::mt19937_64 rng(41);
  for (std::size_t k = 0; k < corpus().size(); ++k) {
    const HomotopyInstance inst = instance(k, random_anchor(rng, 2));
    for (int trial = 0; trial < 50; ++trial) {
      const HomotopyPoint p = random_interior_point(rng, 2);
      const Vector an = inst.eval_dH_dmu(p), fd = fd_dH_dmu(inst, p);
      for (std::size_t i = 0; i < an.size(); ++i) ASSERT_LE(std::abs(an[i] - fd[i]), 1e-6 * std::max(1.0, std::abs(an[i])));
    }
  }
}

TEST(EvalDHDmu, Examples) {
  const Anchor a = Anchor::from_stacked(Vector{1, 2, 3, 4, 5, 6, 7, 8});
  const HomotopyInstance inst = instance(0, a);
  const Vector d = inst.eval_dH_dmu(HomotopyPoint::at_anchor(a, 1.0));
  EXPECT_EQ(d[2], -5.0 * 1.0);
  EXPECT_EQ(d[3], -6.0 * 2.0);

  const HomotopyInstance ones = instance(0);
  const Vector d1 = ones.eval_dH_dmu(HomotopyPoint::at_anchor(ones.anchor(), 1.0));
  EXPECT_EQ(d1[6], -2.0);
  EXPECT_EQ(d1[7], 0.0);
}

TEST(EvalFullJacobian, StacksBothDerivatives) {
  const HomotopyInstance inst = instance(3);
  const HomotopyPoint p(Vector{0.7, 0.4}, Vector{0.2, 0.3}, Vector{1, 2}, Vector{0.9, 1.1}, 0.4);
  const Matrix full = inst.eval_full_jacobian(p);
  const Matrix dv = inst.eval_dH_dv(p);
  const Vector dmu = inst.eval_dH_dmu(p);
  ASSERT_EQ(full.rows(), 8);
  ASSERT_EQ(full.cols(), 9);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) EXPECT_EQ(full(i, j), dv(i, j));
    EXPECT_EQ(full(i, 8), dmu[i]);
  }
}

TEST(EvalLimitSystem, EqualsEvalHAtMuZero) {
  std::mt19937_64 rng(43);
  for (std::size_t k = 0; k < corpus().size(); ++k) {
    const HomotopyInstance inst = instance(k, random_anchor(rng, 2));
    for (int trial = 0; trial < 50; ++trial) {
      Vector aug = oracle::uniform_vector(rng, 8, -2.0, 2.0);
      aug.push_back(0.0);
      const HomotopyPoint p = HomotopyPoint::from_augmented(2, aug);
      const Vector h = inst.eval_H(p), l = inst.eval_limit_system(p.x(), p.w(), p.z1(), p.z2());
      for (std::size_t i = 0; i < h.size(); ++i) EXPECT_LE(std::abs(h[i] - l[i]), 1e-15);
    }
  }
}

TEST(EvalLimitSystem, SemipositiveSolutionWithFittedCertificates) {
  // With x = (sqrt 2, 0), w = (0, 1): the complementarity rows force z1_1 = 0 and
  // z2_2 = 0, and the first block then fixes z2_1 = x_1 and z1_2 = w_2.
  const HomotopyInstance inst = instance(5);
  const double r2 = std::sqrt(2.0);
  const Vector x{r2, 0}, w{0, 1}, z1{0, 1}, z2{r2, 0};
  const Vector l = inst.eval_limit_system(x, w, z1, z2);
  EXPECT_LE(max_abs(l), 1e-12);
  EXPECT_THROW(inst.eval_limit_system(Vector{1}, w, z1, z2), DimensionMismatch);
}

TEST(EvalLimitSystem, ZeroesAreComplementary) {
  // Final points of the solved corpus runs are zeros of the limit system.
  for (std::size_t k : {0u, 2u, 3u, 4u, 5u}) {
    const HomotopyInstance inst = instance(k);
    const SolveReport r = trace_path(inst);
    ASSERT_EQ(r.status, SolveStatus::kSolved);
    const HomotopyPoint& p = r.final_point;
    const Vector l = inst.eval_limit_system(p.x(), p.w(), p.z1(), p.z2());
    ASSERT_LE(max_abs(l), 1e-8) << corpus()[k].name;
    for (int i = 0; i < 2; ++i) {
      EXPECT_LE(std::abs(p.x()[i] * p.w()[i]), 1e-7);
      EXPECT_LE(std::abs(p.z1()[i] * p.x()[i]), 1e-7);
      EXPECT_LE(std::abs(p.z2()[i] * p.w()[i]), 1e-7);
    }
  }
}
