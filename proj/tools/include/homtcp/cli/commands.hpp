#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "homtcp/homotopy.hpp"
#include "homtcp/problem.hpp"
#include "homtcp/tracer.hpp"

namespace homtcp::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotSolved = 2;  // stalled, max iterations, singular; or verify failure
inline constexpr int kExitDiverged = 3;

int exit_code(SolveStatus status);

/// "ones" or a comma-separated list of 4n positive numbers (x0, w0, z1_0, z2_0).
/// Throws std::invalid_argument.
Anchor parse_anchor(std::string_view text, int n);

struct SolveOptions {
  std::filesystem::path problem;
  TracerConfig config;
  std::string anchor = "ones";
  std::optional<std::filesystem::path> trace;
  bool json = false;
};

struct VerifyOptions {
  std::filesystem::path problem;
  Vector x;
  double tol = 1e-6;
  bool json = false;
};

struct CorpusOptions {
  TracerConfig config;
  std::optional<std::filesystem::path> trace_dir;
  bool json = false;
};

/// Gap bound a Solved corpus run must meet on top of the expected-x match.
inline constexpr double kCorpusGapTolerance = 1e-6;

struct ExpectationCheck {
  bool met = false;
  std::string note;
};

ExpectationCheck check_expectation(const ExpectedOutcome& expected, const SolveReport& report);

int run_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);
int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int run_corpus(const CorpusOptions& options, std::ostream& out, std::ostream& err);
int run_export_corpus(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] is the program name).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homtcp::cli
