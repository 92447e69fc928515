#pragma once

// JSON problem files:
//
//   {
//     "order": 3, "dim": 2,
//     "entries": [{"idx": [1, 1, 2], "val": 1.0}, ...],   // 1-based, others zero
//     "q": [-2, 1],
//     "label": "...",                                      // optional
//     "name": "...",                                       // optional
//     "expected": {"x": [...], "w": [...], "outcome": "Solved", "tol": 1e-3}  // optional
//   }

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "homtcp/problem.hpp"

namespace homtcp::cli {

/// Malformed problem file. what() names the line/column for syntax errors or
/// the offending field (e.g. "entries[2].idx") for content errors.
class ProblemFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TcpProblem parse_problem(std::string_view text);
TcpProblem load_problem(const std::filesystem::path& path);

/// Canonical form: fixed key order, nonzero entries in lexicographic index order.
nlohmann::ordered_json problem_to_json(const TcpProblem& problem);
std::string serialize_problem(const TcpProblem& problem);

}  // namespace homtcp::cli
