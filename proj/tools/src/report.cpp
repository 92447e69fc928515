#include "homtcp/cli/report.hpp"

#include <iomanip>
#include <sstream>

namespace homtcp::cli {

std::string format_real(double value) {
  std::ostringstream s;
  s << std::setprecision(17) << value;
  return s.str();
}

std::string format_vector(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_real(v[i]);
  }
  return out;
}

nlohmann::ordered_json residual_to_json(const ComplementarityResidual& r) {
  return {{"x_negativity", r.x_negativity},
          {"w_negativity", r.w_negativity},
          {"gap", r.gap},
          {"component_gaps", r.component_gaps}};
}

nlohmann::ordered_json config_to_json(const TracerConfig& c) {
  return {{"mu0", c.mu0},
          {"eps1", c.eps1},
          {"eps2", c.eps2},
          {"eps3", c.eps3},
          {"shrink", c.shrink},
          {"inner_refinements", c.inner_refinements},
          {"step_floor", c.step_floor},
          {"residual_gate", c.residual_gate},
          {"max_outer_iterations", c.max_outer_iterations},
          {"positivity", c.positivity == PositivityGate::kFullState ? "full" : "xw"},
          {"clip_at_target", c.clip_at_target}};
}

nlohmann::ordered_json report_to_json(const SolveReport& report, const TracerConfig& config) {
  const HomotopyPoint& p = report.final_point;
  nlohmann::ordered_json doc;
  doc["status"] = std::string(to_string(report.status));
  doc["iterations"] = report.iterations;
  doc["mu"] = p.mu();
  doc["x"] = Vector(p.x().begin(), p.x().end());
  doc["w"] = report.residual.w;
  doc["residual"] = residual_to_json(report.residual);
  doc["state"] = {{"w", Vector(p.w().begin(), p.w().end())},
                  {"z1", Vector(p.z1().begin(), p.z1().end())},
                  {"z2", Vector(p.z2().begin(), p.z2().end())}};
  doc["config"] = config_to_json(config);
  return doc;
}

void write_residual_text(std::ostream& out, const ComplementarityResidual& r) {
  out << "w: " << format_vector(r.w) << "\n"
      << "x_negativity: " << format_real(r.x_negativity) << "\n"
      << "w_negativity: " << format_real(r.w_negativity) << "\n"
      << "gap: " << format_real(r.gap) << "\n"
      << "component_gaps: " << format_vector(r.component_gaps) << "\n";
}

void write_report_text(std::ostream& out, const SolveReport& report) {
  out << "status: " << to_string(report.status) << "\n"
      << "iterations: " << report.iterations << "\n"
      << "mu: " << format_real(report.final_point.mu()) << "\n"
      << "x: " << format_vector(report.final_point.x()) << "\n";
  write_residual_text(out, report.residual);
}

std::string trace_csv_header(int n) {
  std::string h = "iter,mu";
  for (const char* block : {"x", "w", "z1_", "z2_"}) {
    for (int i = 1; i <= n; ++i) h += "," + std::string(block) + std::to_string(i);
  }
  return h + ",a,r,det_sign,accepted";
}

void write_trace_csv(std::ostream& out, const PathTrace& trace, int n) {
  out << trace_csv_header(n) << "\n";
  for (const TraceRecord& r : trace.records) {
    out << r.iteration << ',' << format_real(r.mu);
    for (double v : r.v) out << ',' << format_real(v);
    out << ',' << format_real(r.step) << ',' << format_real(r.residual) << ',' << r.det_sign << ','
        << (r.accepted ? 1 : 0) << "\n";
  }
}

}  // namespace homtcp::cli
