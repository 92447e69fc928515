#include "homtcp/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace homtcp {
namespace {

Vector axpy(std::span<const double> y, double a, std::span<const double> x) {
  Vector out(y.begin(), y.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * x[i];
  return out;
}

HomotopyPoint shifted(const HomotopyPoint& p, double a, std::span<const double> dir) {
  return HomotopyPoint::from_augmented(p.dim(), axpy(p.augmented(), a, dir));
}

double distance(const HomotopyPoint& a, const HomotopyPoint& b) {
  Vector d(a.augmented());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b.augmented()[i];
  return euclidean_norm(d);
}

class Tracer {
 public:
  Tracer(const HomotopyInstance& inst, const TracerConfig& config) : inst_(inst), cfg_(config) {
    if (cfg_.record_trace) trace_.emplace();
  }

  SolveReport run();

 private:
  ComplementarityResidual certificate(const HomotopyPoint& p) const {
    return complementarity_residual(inst_.tensor(), inst_.q(), p.x());
  }

  bool certified(const HomotopyPoint& p) const {
    return certificate(p).within(cfg_.certificate_negativity_tol, cfg_.certificate_gap_tol);
  }

  // Residual and positivity gate. Strict positivity inside the path; at the
  // mu ~ 0 end the limit lies on the orthant boundary, so only a small
  // negativity is tolerated there.
  bool admissible(const HomotopyPoint& p, double residual) const {
    if (!(residual <= cfg_.residual_gate)) return false;
    if (p.mu() < -cfg_.eps1 || p.mu() > cfg_.mu0) return false;
    const auto v = p.v();
    const std::size_t gated =
        cfg_.positivity == PositivityGate::kFullState ? v.size() : static_cast<std::size_t>(2 * p.dim());
    const bool interior = p.mu() > cfg_.eps1;
    for (std::size_t i = 0; i < gated; ++i) {
      if (interior ? !(v[i] > 0.0) : !(v[i] >= -cfg_.certificate_negativity_tol)) return false;
    }
    return true;
  }

  void record(int iteration, const HomotopyPoint& p, double step, double residual, bool accepted) {
    if (!trace_) return;
    int sign = 0;
    if (p.all_finite()) sign = det_sign(inst_.eval_dH_dv(p));
    trace_->records.push_back({iteration, p.mu(), Vector(p.v().begin(), p.v().end()), step, residual, sign, accepted});
  }

  SolveReport finish(SolveStatus status, const HomotopyPoint& p, int iterations) {
    SolveReport report;
    report.status = status;
    report.final_point = p;
    report.residual = certificate(p);
    report.iterations = iterations;
    report.trace = std::move(trace_);
    return report;
  }

  const HomotopyInstance& inst_;
  TracerConfig cfg_;
  std::optional<PathTrace> trace_;
};

SolveReport Tracer::run() {
  HomotopyPoint current = HomotopyPoint::at_anchor(inst_.anchor(), cfg_.mu0);
  record(0, current, 0.0, euclidean_norm(inst_.eval_H(current)), true);

  const int inner = cfg_.inner_refinements;
  std::optional<Vector> previous_tau;
  std::optional<double> band_entry_norm;

  int i = 0;
  while (i < cfg_.max_outer_iterations) {
    // Oriented tangent.
    Tangent tg;
    try {
      tg = tangent(inst_, current, i == 0);
    } catch (const SingularMatrixError&) {
      return finish(SolveStatus::kSingularSystem, current, i);
    }
    Vector& tau = tg.direction;
    if (cfg_.orientation_safeguard && previous_tau && dot(tau, *previous_tau) < 0.0) {
      for (double& t : tau) t = -t;
    }
    previous_tau = tau;

    // Largest step whose predictor passes would land on mu = 0, not beyond.
    double base = 1.0;
    const double tau_mu = tau.back();
    if (cfg_.clip_at_target && tau_mu < 0.0 && current.mu() > 0.0 &&
        current.mu() + inner * tau_mu < 0.0) {
      base = current.mu() / (inner * -tau_mu);
    }

    // Shrink the step until a candidate passes both gates.
    HomotopyPoint candidate;
    bool forced = false;
    for (int l = 0;; ++l) {
      const double a = base * std::pow(cfg_.shrink, l);
      bool corrector_ok = true;
      try {
        candidate = predictor_corrector_cycle(inst_, current, tau, a, inner);
      } catch (const SingularMatrixError&) {
        corrector_ok = false;
      }
      if (!corrector_ok) {
        if (a > cfg_.eps3) continue;
        return finish(SolveStatus::kSingularSystem, current, i);
      }
      if (!candidate.all_finite()) {
        record(i + 1, candidate, a, std::nan(""), false);
        return finish(SolveStatus::kDivergedUnbounded, current, i);
      }

      const double dmu = std::abs(candidate.mu() - current.mu());
      const double residual = euclidean_norm(inst_.eval_H(candidate));
      if (!(dmu > 0.0 && dmu < 1.0) && std::min(a, distance(candidate, current)) > cfg_.step_floor) {
        record(i + 1, candidate, a, residual, false);
        continue;
      }
      if (admissible(candidate, residual)) {
        record(i + 1, candidate, a, residual, true);
        break;
      }
      record(i + 1, candidate, a, residual, false);
      if (a > cfg_.eps3) continue;

      // The step floor is exhausted: stop, or force the step and continue.
      if (dmu < cfg_.eps2) {
        if (std::abs(candidate.mu()) < cfg_.eps2 && certified(candidate)) {
          return finish(SolveStatus::kSolved, candidate, i + 1);
        }
        return finish(SolveStatus::kStalledTerminated, candidate, i + 1);
      }
      forced = true;
      break;
    }

    current = std::move(candidate);
    ++i;

    // Termination in the mu ~ 0 band.
    if (!forced && std::abs(current.mu()) <= cfg_.eps1) {
      if (certified(current)) return finish(SolveStatus::kSolved, current, i);
      const double size = max_abs(current.v());
      if (!band_entry_norm) {
        band_entry_norm = size;
      } else if (size > cfg_.band_growth * *band_entry_norm) {
        return finish(SolveStatus::kDivergedUnbounded, current, i);
      }
    }
    if (max_abs(current.v()) > cfg_.overflow_bound) {
      return finish(SolveStatus::kDivergedUnbounded, current, i);
    }
  }
  return finish(SolveStatus::kMaxIterations, current, i);
}

}  // namespace

void TracerConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("TracerConfig: " + what); };
  if (!(eps1 > 0.0 && eps3 > eps1 && eps2 > eps3)) fail("require eps2 > eps3 > eps1 > 0");
  if (!(shrink > 0.0 && shrink < 1.0)) fail("shrink must lie in (0, 1)");
  if (inner_refinements < 1 || inner_refinements > 49) fail("inner_refinements must lie in 1..49");
  if (!(step_floor > 0.0)) fail("step_floor must be positive");
  if (!(residual_gate > 0.0)) fail("residual_gate must be positive");
  if (max_outer_iterations < 1) fail("max_outer_iterations must be positive");
  if (!(mu0 > 0.0 && mu0 <= 1.0)) fail("mu0 must lie in (0, 1]");
  if (!(overflow_bound > 0.0)) fail("overflow_bound must be positive");
  if (!(band_growth > 1.0)) fail("band_growth must exceed 1");
  if (!(certificate_negativity_tol >= 0.0 && certificate_gap_tol >= 0.0)) fail("certificate tolerances must be >= 0");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved: return "Solved";
    case SolveStatus::kStalledTerminated: return "StalledTerminated";
    case SolveStatus::kDivergedUnbounded: return "DivergedUnbounded";
    case SolveStatus::kSingularSystem: return "SingularSystem";
    case SolveStatus::kMaxIterations: return "MaxIterations";
  }
  return "Unknown";
}

std::optional<SolveStatus> parse_status(std::string_view text) {
  for (auto s : {SolveStatus::kSolved, SolveStatus::kStalledTerminated, SolveStatus::kDivergedUnbounded,
                 SolveStatus::kSingularSystem, SolveStatus::kMaxIterations}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

Tangent tangent(const HomotopyInstance& inst, const HomotopyPoint& p, bool is_first) {
  const LuFactorization lu(inst.eval_dH_dv(p));
  if (lu.singular()) throw SingularMatrixError("tangent system singular");
  Vector xi = lu.solve(inst.eval_dH_dmu(p));
  xi.push_back(-1.0);
  const double norm = euclidean_norm(xi);
  for (double& c : xi) c /= norm;

  Tangent t{std::move(xi), lu.determinant_sign()};
  if (!is_first && t.det_sign < 0) {
    for (double& c : t.direction) c = -c;
  }
  return t;
}

HomotopyPoint predictor_corrector_cycle(const HomotopyInstance& inst, const HomotopyPoint& p,
                                        std::span<const double> tau, double step, int inner_refinements) {
  if (!(step >= 0.0)) throw std::invalid_argument("predictor_corrector_cycle: step must be >= 0");
  if (tau.size() != p.augmented().size()) {
    throw DimensionMismatch("predictor_corrector_cycle: tangent length mismatch");
  }
  HomotopyPoint current = p;
  for (int pass = 0; pass < inner_refinements; ++pass) {
    const HomotopyPoint predicted = shifted(current, step, tau);
    const Vector h_pred = inst.eval_H(predicted);
    const Matrix jac_pred = inst.eval_full_jacobian(predicted);

    const HomotopyPoint first = shifted(predicted, -1.0, pinv_right_apply(jac_pred, h_pred));
    const Matrix jac_first = inst.eval_full_jacobian(first);

    const HomotopyPoint second = shifted(predicted, -2.0, pinv_right_apply(jac_pred + jac_first, h_pred));
    current = shifted(second, -1.0, pinv_right_apply(jac_first, inst.eval_H(second)));
  }
  return current;
}

SolveReport trace_path(const HomotopyInstance& inst, const TracerConfig& config) {
  config.validate();
  return Tracer(inst, config).run();
}

std::pair<Vector, Vector> solution_extract(const SolveReport& report, const HomotopyInstance& inst) {
  if (report.status != SolveStatus::kSolved) {
    throw std::logic_error("solution_extract: report status is " + std::string(to_string(report.status)) +
                           ", not Solved");
  }
  const auto x = report.final_point.x();
  Vector w = contract_to_vector(inst.tensor(), x);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += inst.q()[i];
  return {Vector(x.begin(), x.end()), std::move(w)};
}

}  // namespace homtcp
