#include "homtcp/cli/problem_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace homtcp::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ProblemFileError("field '" + field + "': " + what);
}

const json& require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(key, "missing");
  return *it;
}

int read_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  const auto v = j.get<long long>();
  if (v < -1'000'000 || v > 1'000'000) fail(field, "integer out of range");
  return static_cast<int>(v);
}

double read_real(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  return j.get<double>();
}

Vector read_vector(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  Vector out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_real(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::pair<int, int> line_and_column(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

TcpProblem parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ProblemFileError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                           ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw ProblemFileError("line 1: top level must be a JSON object");

  static const std::vector<std::string> known = {"order", "dim", "entries", "q", "label", "name", "expected"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) fail(key, "unknown field");
  }

  const int order = read_int(require(doc, "order"), "order");
  const int dim = read_int(require(doc, "dim"), "dim");
  if (order < 2) fail("order", "must be >= 2");
  if (dim < 1) fail("dim", "must be >= 1");

  const json& entries_json = require(doc, "entries");
  if (!entries_json.is_array()) fail("entries", "expected an array");
  std::vector<TensorEntry> entries;
  for (std::size_t k = 0; k < entries_json.size(); ++k) {
    const std::string field = "entries[" + std::to_string(k) + "]";
    const json& e = entries_json[k];
    if (!e.is_object()) fail(field, "expected an object {\"idx\": [...], \"val\": x}");
    for (const auto& [key, value] : e.items()) {
      if (key != "idx" && key != "val") fail(field + "." + key, "unknown field");
    }
    const json& idx = require(e, "idx");
    if (!idx.is_array()) fail(field + ".idx", "expected an array of integers");
    TensorEntry entry;
    for (std::size_t p = 0; p < idx.size(); ++p) {
      entry.index.push_back(read_int(idx[p], field + ".idx[" + std::to_string(p) + "]"));
    }
    entry.value = read_real(require(e, "val"), field + ".val");
    entries.push_back(std::move(entry));
  }

  Tensor tensor = [&] {
    try {
      return Tensor::from_entries(order, dim, entries);
    } catch (const std::exception& e) {
      fail("entries", e.what());
    }
  }();

  Vector q = read_vector(require(doc, "q"), "q");
  if (static_cast<int>(q.size()) != dim) fail("q", "length " + std::to_string(q.size()) + " does not match dim");

  std::string label, name;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) fail("label", "expected a string");
    label = doc["label"].get<std::string>();
  }
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("name", "expected a string");
    name = doc["name"].get<std::string>();
  }

  std::optional<ExpectedOutcome> expected;
  if (doc.contains("expected")) {
    const json& ex = doc["expected"];
    if (!ex.is_object()) fail("expected", "expected an object");
    for (const auto& [key, value] : ex.items()) {
      if (key != "x" && key != "w" && key != "outcome" && key != "tol") fail("expected." + key, "unknown field");
    }
    ExpectedOutcome out;
    out.x = read_vector(require(ex, "x"), "expected.x");
    out.w = read_vector(require(ex, "w"), "expected.w");
    if (static_cast<int>(out.x.size()) != dim) fail("expected.x", "length does not match dim");
    if (static_cast<int>(out.w.size()) != dim) fail("expected.w", "length does not match dim");
    const json& outcome = require(ex, "outcome");
    if (!outcome.is_string()) fail("expected.outcome", "expected a string");
    const auto kind = parse_outcome(outcome.get<std::string>());
    if (!kind) fail("expected.outcome", "must be \"Solved\" or \"DivergedUnbounded\"");
    out.outcome = *kind;
    if (ex.contains("tol")) {
      out.tolerance = read_real(ex["tol"], "expected.tol");
      if (!(out.tolerance >= 0.0)) fail("expected.tol", "must be >= 0");
    }
    expected = std::move(out);
  }

  try {
    return TcpProblem(std::move(tensor), std::move(q), std::move(label), std::move(expected), std::move(name));
  } catch (const std::exception& e) {
    fail("q", e.what());
  }
}

TcpProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemFileError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_problem(buffer.str());
  } catch (const ProblemFileError& e) {
    throw ProblemFileError(path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json problem_to_json(const TcpProblem& problem) {
  nlohmann::ordered_json doc;
  if (!problem.name.empty()) doc["name"] = problem.name;
  if (!problem.label.empty()) doc["label"] = problem.label;
  doc["order"] = problem.order();
  doc["dim"] = problem.dim();
  auto entries = nlohmann::ordered_json::array();
  for (const TensorEntry& e : problem.tensor.nonzero_entries()) {
    entries.push_back({{"idx", e.index}, {"val", e.value}});
  }
  doc["entries"] = std::move(entries);
  doc["q"] = problem.q;
  if (problem.expected) {
    const ExpectedOutcome& ex = *problem.expected;
    doc["expected"] = {{"x", ex.x}, {"w", ex.w}, {"outcome", std::string(to_string(ex.outcome))}, {"tol", ex.tolerance}};
  }
  return doc;
}

// One entry per line; everything else compact.
std::string serialize_problem(const TcpProblem& problem) {
  const auto doc = problem_to_json(problem);
  std::string out = "{\n";
  bool first = true;
  for (const auto& [key, value] : doc.items()) {
    if (!first) out += ",\n";
    first = false;
    out += "  " + nlohmann::ordered_json(key).dump() + ": ";
    if (key == "entries" && !value.empty()) {
      out += "[\n";
      for (std::size_t k = 0; k < value.size(); ++k) {
        out += "    " + value[k].dump() + (k + 1 < value.size() ? ",\n" : "\n");
      }
      out += "  ]";
    } else {
      out += value.dump();
    }
  }
  return out + "\n}\n";
}

}  // namespace homtcp::cli
