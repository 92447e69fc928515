// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number
// of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "homtcp/cli/commands.hpp"
#include "homtcp/problem.hpp"
#include "homtcp/tracer.hpp"
#include "oracles.hpp"

using namespace homtcp;

namespace {

// Tolerances, pinned.
constexpr double kSolutionTol = 1e-3;
constexpr double kPositiveDefiniteSolutionTol = 2e-3;  // rounded printed digits for the P0 example
constexpr double kGapTol = 1e-6;
constexpr double kRuntimeLimitSeconds = 1.0;
constexpr double kDivergenceMagnitude = 1e3;
constexpr double kProductTol = 1e-2;
constexpr double kAsymptoteTol = 5e-2;
constexpr double kStartIdentityTol = 1e-14;
constexpr double kJacobianFdStep = 1e-6;
constexpr double kJacobianRelTol = 1e-5;
constexpr double kSymmetrizationTol = 1e-12;
constexpr double kTangentResidualTol = 1e-8;
constexpr double kTangentNormTol = 1e-14;
constexpr double kPinvResidualTol = 1e-9;
constexpr double kLcpMatchTol = 1e-5;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  failures += !o.pass;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << " -- " << o.detail << std::endl;
}

std::string num(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

HomotopyInstance instance(std::size_t k, Anchor anchor) {
  const TcpProblem& p = corpus().at(k);
  return HomotopyInstance(p.tensor, p.q, std::move(anchor));
}
HomotopyInstance instance(std::size_t k) { return instance(k, Anchor::ones(corpus().at(k).dim())); }

struct Timed {
  SolveReport report;
  double seconds;
};

Timed timed_solve(const HomotopyInstance& inst, const TracerConfig& cfg = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport r = trace_path(inst, cfg);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(r), s};
}

Outcome reproduce(std::size_t k, const Vector& x_expected, double tol) {
  const HomotopyInstance inst = instance(k);
  const Timed t = timed_solve(inst);
  const SolveReport& r = t.report;
  if (r.status != SolveStatus::kSolved) return {false, corpus()[k].name + " status " + std::string(to_string(r.status))};
  const auto [x, w] = solution_extract(r, inst);
  double dx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dx = std::max(dx, std::abs(x[i] - x_expected[i]));
  const bool ok = dx <= tol && r.residual.gap <= kGapTol && t.seconds < kRuntimeLimitSeconds;
  return {ok, corpus()[k].name + ": |x - x*|_inf = " + num(dx) + ", gap = " + num(r.residual.gap) + ", " +
                  num(t.seconds * 1e3, 3) + " ms"};
}

Outcome combine(const std::vector<Outcome>& parts) {
  Outcome all{true, ""};
  for (const Outcome& p : parts) {
    all.pass = all.pass && p.pass;
    all.detail += (all.detail.empty() ? "" : "; ") + p.detail;
  }
  return all;
}

}  // namespace

int main() {
  const double cube_root_half = std::cbrt(0.5);

  report(1, "column-sufficient example reproduces x = 2^(-1/3) (1, 1)",
         [&] { return reproduce(0, {cube_root_half, cube_root_half}, kSolutionTol); });

  report(2, "column-adequate, strictly semipositive and semipositive examples reproduce", [&] {
    return combine({reproduce(2, {1, 2}, kSolutionTol), reproduce(4, {0.901703, 0.3230419}, kSolutionTol),
                    reproduce(5, {1.414214, 0}, kSolutionTol)});
  });

  report(3, "P0 example reproduces within rounding of the printed digits",
         [&] { return reproduce(3, {0.717516, 0.50706}, kPositiveDefiniteSolutionTol); });

  report(4, "column-competent example diverges along x1 x2 -> 1, w -> (0, 3)", [&] {
    const HomotopyInstance inst = instance(1);
    TracerConfig cfg;
    cfg.record_trace = true;
    const SolveReport r = trace_path(inst, cfg);
    double max_x1 = 0.0;
    std::vector<const TraceRecord*> accepted;
    for (const TraceRecord& rec : r.trace->records) {
      if (!rec.accepted) continue;
      accepted.push_back(&rec);
      max_x1 = std::max(max_x1, rec.v[0]);
    }
    // Last five accepted points.
    double worst_product = 0.0, worst_w = 0.0;
    for (std::size_t i = accepted.size() >= 5 ? accepted.size() - 5 : 0; i < accepted.size(); ++i) {
      const Vector& v = accepted[i]->v;
      worst_product = std::max(worst_product, std::abs(v[0] * v[1] - 1.0));
      const Vector w = verify(corpus()[1], Vector{v[0], v[1]}).w;
      worst_w = std::max({worst_w, std::abs(w[0] - 0.0), std::abs(w[1] - 3.0)});
    }
    const ComplementarityResidual printed = verify(corpus()[1], Vector{1697.278, 0});
    const bool ok = r.status == SolveStatus::kDivergedUnbounded && max_x1 > kDivergenceMagnitude &&
                    worst_product <= kProductTol && worst_w <= kAsymptoteTol && printed.w[0] == -2.0;
    return Outcome{ok, "status " + std::string(to_string(r.status)) + ", max x1 = " + num(max_x1, 6) +
                           ", |x1 x2 - 1| <= " + num(worst_product) + ", |w - (0,3)|_inf <= " + num(worst_w) +
                           ", printed point w1 = " + num(printed.w[0])};
  });

  report(5, "H vanishes at the anchor for 200 random positive anchors", [&] {
    std::mt19937_64 rng(5);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      for (std::size_t k = 0; k < corpus().size(); ++k) {
        const HomotopyInstance inst =
            instance(k, Anchor::from_stacked(oracle::uniform_vector(rng, 8, 0.01, 100.0)));
        worst = std::max(worst, max_abs(inst.eval_H(HomotopyPoint::at_anchor(inst.anchor(), 1.0))));
      }
    }
    return Outcome{worst <= kStartIdentityTol, "max |H| = " + num(worst) + " over 1200 evaluations"};
  });

  report(6, "analytic dH/dv and dH/dmu match central differences", [&] {
    std::mt19937_64 rng(6);
    double worst_v = 0.0, worst_mu = 0.0;
    for (std::size_t k = 0; k < corpus().size(); ++k) {
      const HomotopyInstance inst = instance(k);
      for (int trial = 0; trial < 50; ++trial) {
        Vector aug = oracle::uniform_vector(rng, 8, 0.5, 2.0);
        aug.push_back(oracle::uniform_vector(rng, 1, 0.01, 0.99)[0]);
        const HomotopyPoint p = HomotopyPoint::from_augmented(2, aug);
        const Matrix fd = oracle::central_difference(
            [&](const std::vector<double>& y) { return inst.eval_H(HomotopyPoint::from_augmented(2, y)); }, aug,
            kJacobianFdStep);
        const Matrix full = inst.eval_full_jacobian(p);
        Matrix fd_v(8, 8), an_v(8, 8), fd_mu(8, 1), an_mu(8, 1);
        for (int i = 0; i < 8; ++i) {
          for (int j = 0; j < 8; ++j) {
            fd_v(i, j) = fd(i, j);
            an_v(i, j) = full(i, j);
          }
          fd_mu(i, 0) = fd(i, 8);
          an_mu(i, 0) = full(i, 8);
        }
        worst_v = std::max(worst_v, oracle::max_relative_error(an_v, fd_v));
        worst_mu = std::max(worst_mu, oracle::max_relative_error(an_mu, fd_mu));
      }
    }
    return Outcome{worst_v <= kJacobianRelTol && worst_mu <= kJacobianRelTol,
                   "max rel err dH/dv = " + num(worst_v) + ", dH/dmu = " + num(worst_mu) + " (300 points)"};
  });

  report(7, "A x^(m-1) equals Ahat x^(m-1) on 100 random pairs", [&] {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int m = 2 + trial % 3, n = 1 + (trial / 3) % 3;
      const Tensor a = oracle::random_tensor(rng, m, n);
      const Vector x = oracle::uniform_vector(rng, n, -2, 2);
      const Vector lhs = contract_to_vector(a, x), rhs = contract_to_vector(symmetrize(a), x);
      for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    }
    return Outcome{worst <= kSymmetrizationTol, "max deviation = " + num(worst)};
  });

  report(8, "tangent is a unit null vector of H' at every accepted point", [&] {
    double worst_res = 0.0, worst_norm = 0.0, start_mu = -1.0;
    int points = 0;
    for (std::size_t k = 0; k < corpus().size(); ++k) {
      const HomotopyInstance inst = instance(k);
      TracerConfig cfg;
      cfg.record_trace = true;
      const SolveReport r = trace_path(inst, cfg);
      for (const TraceRecord& rec : r.trace->records) {
        if (!rec.accepted) continue;
        Vector aug = rec.v;
        aug.push_back(rec.mu);
        const HomotopyPoint p = HomotopyPoint::from_augmented(2, aug);
        const Tangent t = tangent(inst, p, rec.iteration == 0);
        if (rec.iteration == 0) start_mu = std::max(start_mu, t.direction.back());
        worst_res = std::max(worst_res, euclidean_norm(multiply(inst.eval_full_jacobian(p), t.direction)));
        worst_norm = std::max(worst_norm, std::abs(euclidean_norm(t.direction) - 1.0));
        ++points;
      }
    }
    const bool ok = worst_res <= kTangentResidualTol && worst_norm <= kTangentNormTol && start_mu < 0.0;
    return Outcome{ok, std::to_string(points) + " points: max |H' tau| = " + num(worst_res) +
                           ", max | |tau| - 1 | = " + num(worst_norm) + ", largest start tau_mu = " + num(start_mu)};
  });

  report(9, "Moore-Penrose right inverse solves and is minimum-norm on 100 random 8x9 systems", [&] {
    std::mt19937_64 rng(9);
    double worst_res = 0.0, worst_orth = 0.0;
    bool minimal = true;
    for (int trial = 0; trial < 100; ++trial) {
      Matrix m(8, 9);
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 9; ++j) m(i, j) = oracle::uniform_vector(rng, 1, -1, 1)[0];
      const Vector b = oracle::uniform_vector(rng, 8, -3, 3);
      const Vector y = pinv_right_apply(m, b);
      const Vector my = multiply(m, y);
      for (int i = 0; i < 8; ++i) worst_res = std::max(worst_res, std::abs(my[i] - b[i]));
      // Projected oracle: the minimum-norm solution is y minus its component
      // along the null vector, so that component must vanish.
      Vector nv = oracle::null_vector(m);
      const double nn = euclidean_norm(nv);
      for (double& c : nv) c /= nn;
      const double along = dot(y, nv);
      worst_orth = std::max(worst_orth, std::abs(along) / std::max(1.0, euclidean_norm(y)));
      for (double s : {-1.0, -0.01, 0.01, 1.0}) {
        Vector other = y;
        for (std::size_t i = 0; i < other.size(); ++i) other[i] += s * nv[i];
        minimal = minimal && euclidean_norm(y) <= euclidean_norm(other);
      }
    }
    return Outcome{worst_res <= kPinvResidualTol && worst_orth <= kPinvResidualTol && minimal,
                   "max |M y - b| = " + num(worst_res) + ", max |y . null| = " + num(worst_orth) +
                       (minimal ? ", no shorter solution found" : ", SHORTER solution found")};
  });

  report(10, "tracer matches enumeration on 50 seeded 2x2 LCPs with a unique solution", [&] {
    int taken = 0, matched = 0, p_taken = 0, p_matched = 0;
    std::string misses;
    for (std::uint64_t seed = 0; taken < 50; ++seed) {
      const TcpProblem p = random_problem(2, 2, seed, 1.0);
      const LcpEnumeration e = lcp_brute_force(p);
      if (e.solutions.size() != 1) continue;
      ++taken;
      const bool p_matrix = oracle::is_p_matrix_2x2(p.tensor);
      p_taken += p_matrix;
      const SolveReport r = trace_path(HomotopyInstance(p.tensor, p.q, Anchor::ones(2)));
      double dx = 0.0;
      for (int i = 0; i < 2; ++i) dx = std::max(dx, std::abs(r.final_point.x()[i] - e.solutions[0][i]));
      const bool ok = r.status == SolveStatus::kSolved && dx <= kLcpMatchTol;
      matched += ok;
      p_matched += ok && p_matrix;
      if (!ok) {
        const auto z2 = r.final_point.z2();
        misses += " seed " + std::to_string(seed) + " (" + std::string(to_string(r.status)) +
                  (p_matrix ? ", P-matrix" : ", not P") + ", min z2 = " + num(std::min(z2[0], z2[1]), 3) + ")";
      }
    }
    return Outcome{matched == taken, std::to_string(matched) + "/" + std::to_string(taken) + " matched (" +
                                         std::string(kRandomProblemAlgorithm) + "); P-matrix subset " +
                                         std::to_string(p_matched) + "/" + std::to_string(p_taken) +
                                         (misses.empty() ? "" : "; misses:" + misses)};
  });

  report(11, "corpus JSON report is byte-identical across runs", [&] {
    std::ostringstream a, b, err;
    cli::CorpusOptions opts;
    opts.json = true;
    const int ca = cli::run_corpus(opts, a, err);
    const int cb = cli::run_corpus(opts, b, err);
    const bool ok = ca == 0 && cb == 0 && !a.str().empty() && a.str() == b.str();
    return Outcome{ok, std::to_string(a.str().size()) + " bytes, exit codes " + std::to_string(ca) + "/" +
                           std::to_string(cb) + (a.str() == b.str() ? ", identical" : ", DIFFERENT")};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion/criteria failed")
            << std::endl;
  return failures;
}
