#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "homtcp/residual.hpp"
#include "homtcp/tracer.hpp"

namespace homtcp::cli {

/// 17 significant digits; enough to reparse to the same double.
std::string format_real(double value);
std::string format_vector(std::span<const double> v);

nlohmann::ordered_json residual_to_json(const ComplementarityResidual& r);
nlohmann::ordered_json config_to_json(const TracerConfig& config);
nlohmann::ordered_json report_to_json(const SolveReport& report, const TracerConfig& config);

/// "key: value" lines, values at full precision.
void write_report_text(std::ostream& out, const SolveReport& report);
void write_residual_text(std::ostream& out, const ComplementarityResidual& r);

/// Header plus one row per recorded attempt, 4n + 6 columns:
/// iter, mu, x1..xn, w1..wn, z1_1..z1_n, z2_1..z2_n, a, r, det_sign, accepted.
void write_trace_csv(std::ostream& out, const PathTrace& trace, int n);
std::string trace_csv_header(int n);

}  // namespace homtcp::cli
