#pragma once

// Predictor-corrector tracing of the homotopy path from (v0, 1) toward mu = 0.
//
// Each outer iteration computes the unit tangent (oriented by the sign of
// det dH/dv), then runs `inner_refinements` passes of
//
//   predictor   t  = p + a tau
//   corrector   b  = t - H'(t)^+ H(t)
//               bb = t - 2 (H'(t) + H'(b))^+ H(t)
//               p' = bb - H'(b)^+ H(bb)
//
// with a = shrink^l, growing l until the candidate passes the residual and
// positivity gates. The epsilon tiers decide when to stop.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "homtcp/homotopy.hpp"
#include "homtcp/linalg.hpp"
#include "homtcp/residual.hpp"

namespace homtcp {

/// Which coordinates must stay strictly positive at an accepted point.
enum class PositivityGate {
  kComplementarity,  // x and w only
  kFullState,        // x, w, z1 and z2
};

struct TracerConfig {
  double mu0 = 1.0;
  double eps1 = 1e-8;  // final |mu| tolerance
  double eps2 = 1e-3;  // stall detector
  double eps3 = 1e-6;  // smallest step still retried
  double shrink = 0.9;
  int inner_refinements = 3;
  double step_floor = 1e-5;
  double residual_gate = 1.0;
  int max_outer_iterations = 5000;
  double overflow_bound = 1e12;
  // Inside |mu| <= eps1 with a failing certificate, ||v||_inf growing past
  // band_growth times its value on entering the band is reported as divergence.
  double band_growth = 2.0;
  PositivityGate positivity = PositivityGate::kComplementarity;
  bool clip_at_target = true;
  bool orientation_safeguard = false;
  bool record_trace = false;
  double certificate_negativity_tol = 1e-8;
  double certificate_gap_tol = 1e-6;

  /// Throws std::invalid_argument when the tolerances are out of order
  /// (eps2 > eps3 > eps1 > 0) or a parameter is out of range.
  void validate() const;
};

enum class SolveStatus {
  kSolved,
  kStalledTerminated,
  kDivergedUnbounded,
  kSingularSystem,
  kMaxIterations,
};

std::string_view to_string(SolveStatus status);
std::optional<SolveStatus> parse_status(std::string_view text);

struct TraceRecord {
  int iteration = 0;  // outer iteration the attempt belongs to
  double mu = 0.0;
  Vector v;           // (x, w, z1, z2)
  double step = 0.0;  // a
  double residual = 0.0;
  int det_sign = 0;
  bool accepted = false;
};

struct PathTrace {
  std::vector<TraceRecord> records;
};

struct SolveReport {
  SolveStatus status = SolveStatus::kMaxIterations;
  HomotopyPoint final_point;
  ComplementarityResidual residual;  // from the final x, with w recomputed from the tensor
  int iterations = 0;
  std::optional<PathTrace> trace;
};

struct Tangent {
  Vector direction;  // unit vector of length 4n+1
  int det_sign = 0;  // sign of det dH/dv at the point
};

/// Unit tangent s = (dH/dv)^{-1} dH/dmu, xi = (s, -1)/||(s, -1)||. Returns xi when
/// is_first, otherwise xi if det dH/dv > 0 and -xi if not.
/// Throws SingularMatrixError when dH/dv is singular.
Tangent tangent(const HomotopyInstance& inst, const HomotopyPoint& p, bool is_first);

/// One outer step's predictor-corrector passes; the refined point of each
/// pass seeds the next. Throws SingularMatrixError when a corrector system is
/// rank deficient. Does not check finiteness.
HomotopyPoint predictor_corrector_cycle(const HomotopyInstance& inst, const HomotopyPoint& p,
                                        std::span<const double> tau, double step, int inner_refinements);

SolveReport trace_path(const HomotopyInstance& inst, const TracerConfig& config = {});

/// (x, A x^{m-1} + q) at the final point. Throws std::logic_error unless Solved.
std::pair<Vector, Vector> solution_extract(const SolveReport& report, const HomotopyInstance& inst);

}  // namespace homtcp
