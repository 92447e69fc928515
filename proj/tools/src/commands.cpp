#include "homtcp/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "homtcp/cli/problem_file.hpp"
#include "homtcp/cli/report.hpp"

namespace homtcp::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double max_deviation(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (!(d <= worst)) worst = d;  // propagates NaN
  }
  return worst;
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

std::string fixed_vector(std::span<const double> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fixed(v[i], 7);
  return out + ")";
}

bool open_output(std::ofstream& file, const std::filesystem::path& path, std::ostream& err) {
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) err << "error: cannot write " << path.string() << "\n";
  return static_cast<bool>(file);
}

}  // namespace

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved: return kExitOk;
    case SolveStatus::kDivergedUnbounded: return kExitDiverged;
    case SolveStatus::kStalledTerminated:
    case SolveStatus::kSingularSystem:
    case SolveStatus::kMaxIterations: return kExitNotSolved;
  }
  return kExitNotSolved;
}

Anchor parse_anchor(std::string_view text, int n) {
  const std::string t = trim(text);
  if (t == "ones") return Anchor::ones(n);
  Vector values;
  std::size_t start = 0;
  while (start <= t.size()) {
    const std::size_t comma = std::min(t.find(',', start), t.size());
    const std::string item = trim(std::string_view(t).substr(start, comma - start));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("--anchor: '" + item + "' is not a number");
    }
    values.push_back(v);
    start = comma + 1;
  }
  if (static_cast<int>(values.size()) != 4 * n) {
    throw std::invalid_argument("--anchor: expected 4n = " + std::to_string(4 * n) + " values, got " +
                                std::to_string(values.size()));
  }
  return Anchor::from_stacked(values);
}

ExpectationCheck check_expectation(const ExpectedOutcome& expected, const SolveReport& report) {
  switch (expected.outcome) {
    case OutcomeKind::kSolved: {
      if (report.status != SolveStatus::kSolved) return {false, "expected Solved"};
      const double dx = max_deviation(report.final_point.x(), expected.x);
      if (!(dx <= expected.tolerance)) return {false, "x off by " + fixed(dx, 3)};
      if (!(report.residual.gap <= kCorpusGapTolerance)) return {false, "gap " + fixed(report.residual.gap, 3)};
      return {true, "x within " + fixed(expected.tolerance, 3)};
    }
    case OutcomeKind::kDivergedUnbounded: {
      if (report.status != SolveStatus::kDivergedUnbounded) return {false, "expected DivergedUnbounded"};
      const double dw = max_deviation(report.residual.w, expected.w);
      if (!(dw <= expected.tolerance)) return {false, "w off the asymptote by " + fixed(dw, 3)};
      return {true, "w within " + fixed(expected.tolerance, 3) + " of asymptote"};
    }
  }
  return {false, "unknown outcome"};
}

int run_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const TcpProblem problem = load_problem(options.problem);
    TracerConfig config = options.config;
    config.validate();
    config.record_trace = options.trace.has_value();
    HomotopyInstance instance(problem.tensor, problem.q, parse_anchor(options.anchor, problem.dim()));

    std::ofstream trace_file;
    if (options.trace && !open_output(trace_file, *options.trace, err)) return kExitInputError;

    const SolveReport report = trace_path(instance, config);
    if (options.json) {
      auto doc = report_to_json(report, config);
      if (!problem.name.empty()) doc["problem"] = problem.name;
      out << doc.dump(2) << "\n";
    } else {
      write_report_text(out, report);
    }
    if (options.trace) write_trace_csv(trace_file, *report.trace, problem.dim());
    return exit_code(report.status);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (!(options.tol >= 0.0)) throw std::invalid_argument("--tol must be >= 0");
    const TcpProblem problem = load_problem(options.problem);
    const ComplementarityResidual r = verify(problem, options.x);
    const bool ok = r.within(options.tol, options.tol);
    if (options.json) {
      auto doc = residual_to_json(r);
      doc["w"] = r.w;
      doc["tol"] = options.tol;
      doc["ok"] = ok;
      out << doc.dump(2) << "\n";
    } else {
      out << "x: " << format_vector(options.x) << "\n";
      write_residual_text(out, r);
      out << "result: " << (ok ? "ok" : "FAIL") << " (tol " << fixed(options.tol) << ")\n";
    }
    return ok ? kExitOk : kExitNotSolved;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int run_corpus(const CorpusOptions& options, std::ostream& out, std::ostream& err) {
  TracerConfig config = options.config;
  try {
    config.validate();
    if (options.trace_dir) std::filesystem::create_directories(*options.trace_dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  config.record_trace = options.trace_dir.has_value();

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream table;
  table << std::left << std::setw(10) << "problem" << std::setw(20) << "status" << std::setw(30) << "x"
        << std::setw(30) << "w" << std::setw(12) << "gap" << std::setw(7) << "iters"
        << "check\n";
  bool all_met = true;

  for (const TcpProblem& problem : corpus()) {
    HomotopyInstance instance(problem.tensor, problem.q, Anchor::ones(problem.dim()));
    const SolveReport report = trace_path(instance, config);
    const ExpectationCheck check = check_expectation(*problem.expected, report);
    all_met = all_met && check.met;

    if (options.trace_dir) {
      std::ofstream file;
      if (!open_output(file, *options.trace_dir / (problem.name + ".csv"), err)) return kExitInputError;
      write_trace_csv(file, *report.trace, problem.dim());
    }

    const auto x = report.final_point.x();
    rows.push_back({{"problem", problem.name},
                    {"label", problem.label},
                    {"expected", std::string(to_string(problem.expected->outcome))},
                    {"status", std::string(to_string(report.status))},
                    {"iterations", report.iterations},
                    {"mu", report.final_point.mu()},
                    {"x", Vector(x.begin(), x.end())},
                    {"w", report.residual.w},
                    {"gap", report.residual.gap},
                    {"expectation_met", check.met},
                    {"note", check.note}});
    table << std::setw(10) << problem.name << std::setw(20) << to_string(report.status) << std::setw(30)
          << fixed_vector(x) << std::setw(30) << fixed_vector(report.residual.w) << std::setw(12)
          << fixed(report.residual.gap, 3) << std::setw(7) << report.iterations << (check.met ? "ok" : "MISMATCH")
          << " (" << check.note << ")\n"
          << std::setw(10) << "" << "label: " << problem.label << "\n";
  }

  if (options.json) {
    nlohmann::ordered_json doc;
    doc["config"] = config_to_json(config);
    doc["problems"] = std::move(rows);
    doc["all_expectations_met"] = all_met;
    out << doc.dump(2) << "\n";
  } else {
    out << table.str() << (all_met ? "all expectations met\n" : "some expectations NOT met\n");
  }
  return all_met ? kExitOk : kExitNotSolved;
}

int run_export_corpus(const std::filesystem::path& dir, std::ostream& out, std::ostream& err) {
  try {
    std::filesystem::create_directories(dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  for (const TcpProblem& problem : corpus()) {
    const auto path = dir / (problem.name + ".json");
    std::ofstream file;
    if (!open_output(file, path, err)) return kExitInputError;
    file << serialize_problem(problem);
    out << path.string() << "\n";
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homotopy path-following solver for tensor complementarity problems", "homtcp"};
  app.require_subcommand(1);

  SolveOptions solve;
  std::string trace_path_arg;
  auto* cmd_solve = app.add_subcommand("solve", "Solve the problem in a JSON problem file");
  cmd_solve->add_option("problem", solve.problem, "Problem file")->required();
  cmd_solve->add_option("--mu-tol", solve.config.eps1, "Final |mu| tolerance (eps1)")->capture_default_str();
  cmd_solve->add_option("--eps2", solve.config.eps2, "Stall tolerance")->capture_default_str();
  cmd_solve->add_option("--eps3", solve.config.eps3, "Smallest step still retried")->capture_default_str();
  cmd_solve->add_option("--shrink", solve.config.shrink, "Step shrink factor in (0,1)")->capture_default_str();
  cmd_solve->add_option("--inner", solve.config.inner_refinements, "Corrector passes per step")
      ->capture_default_str();
  cmd_solve->add_option("--step-floor", solve.config.step_floor, "Step floor a0")->capture_default_str();
  cmd_solve->add_option("--r-max", solve.config.residual_gate, "Residual acceptance gate")->capture_default_str();
  cmd_solve->add_option("--max-iter", solve.config.max_outer_iterations, "Outer iteration cap")
      ->capture_default_str();
  cmd_solve->add_option("--anchor", solve.anchor, "\"ones\" or 4n comma-separated positive values")
      ->capture_default_str();
  bool full_gate = false, no_clip = false;
  cmd_solve->add_flag("--full-gate", full_gate, "Require z1, z2 > 0 as well as x, w > 0");
  cmd_solve->add_flag("--no-clip", no_clip, "Do not clip the predictor at mu = 0");
  cmd_solve->add_option("--trace", trace_path_arg, "Write the path trace as CSV");
  cmd_solve->add_flag("--json", solve.json, "Machine-readable report");

  VerifyOptions verify_opts;
  auto* cmd_verify = app.add_subcommand("verify", "Check a candidate solution");
  cmd_verify->add_option("problem", verify_opts.problem, "Problem file")->required();
  cmd_verify->add_option("--x", verify_opts.x, "Candidate x, comma separated")->required()->delimiter(',');
  cmd_verify->add_option("--tol", verify_opts.tol, "Residual tolerance")->capture_default_str();
  cmd_verify->add_flag("--json", verify_opts.json, "Machine-readable report");

  CorpusOptions corpus_opts;
  std::string trace_dir_arg;
  auto* cmd_corpus = app.add_subcommand("corpus", "Run the bundled reference problems");
  cmd_corpus->add_flag("--json", corpus_opts.json, "Machine-readable table");
  cmd_corpus->add_option("--trace-dir", trace_dir_arg, "Write one CSV trace per problem");

  std::string export_dir;
  auto* cmd_export = app.add_subcommand("export-corpus", "Write the reference problems as problem files");
  cmd_export->add_option("dir", export_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (*cmd_solve) {
    if (!trace_path_arg.empty()) solve.trace = trace_path_arg;
    if (full_gate) solve.config.positivity = PositivityGate::kFullState;
    if (no_clip) solve.config.clip_at_target = false;
    return run_solve(solve, out, err);
  }
  if (*cmd_verify) return run_verify(verify_opts, out, err);
  if (*cmd_corpus) {
    if (!trace_dir_arg.empty()) corpus_opts.trace_dir = trace_dir_arg;
    return run_corpus(corpus_opts, out, err);
  }
  if (*cmd_export) return run_export_corpus(export_dir, out, err);
  return kExitInputError;
}

}  // namespace homtcp::cli
