#include "saddleflow/problem_io.hpp"

#include "saddleflow/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace saddleflow {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::string_view source, const std::string& what) {
  throw ParseError(std::string(source) + ": " + what);
}

// Line and column (1-based) of a byte offset, as reported by the JSON lexer.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i + 1 < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& member(const json& obj, const char* key, std::string_view source,
                   const std::string& path) {
  if (!obj.is_object()) fail(source, path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(source, path + ": missing field '" + key + "'");
  return *it;
}

double number(const json& j, std::string_view source, const std::string& path) {
  if (!j.is_number()) fail(source, path + ": expected a number");
  return j.get<double>();
}

Vector vector_of(const json& j, std::string_view source, const std::string& path,
                 std::optional<Index> expected) {
  if (!j.is_array()) fail(source, path + ": expected an array of numbers");
  if (expected && static_cast<Index>(j.size()) != *expected) {
    fail(source, path + ": expected " + std::to_string(*expected) + " entries, got " +
                     std::to_string(j.size()));
  }
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Index>(i)) = number(j[i], source, path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix row_major(const json& j, Index n, std::string_view source, const std::string& path) {
  const Vector flat = vector_of(j, source, path, n * n);
  Matrix M(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) M(r, c) = flat(r * n + c);
  }
  return M;
}

Index dimension(const json& j, std::string_view source, const std::string& path) {
  if (!j.is_number_integer()) fail(source, path + ": expected an integer");
  const auto v = j.get<long long>();
  if (v < 0) fail(source, path + ": must be nonnegative");
  return static_cast<Index>(v);
}

json to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json to_json_row_major(const Matrix& M) {
  json arr = json::array();
  for (Index r = 0; r < M.rows(); ++r) {
    for (Index c = 0; c < M.cols(); ++c) arr.push_back(M(r, c));
  }
  return arr;
}

}  // namespace

ProblemFile parse_problem(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = locate(text, e.byte);
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": invalid JSON (" << e.what() << ")";
    throw ParseError(os.str());
  }

  ProblemFile out;
  auto& spec = out.spec;
  const Index n = dimension(member(doc, "n", source, "$"), source, "n");
  const Index m = dimension(member(doc, "m", source, "$"), source, "m");
  if (n == 0) fail(source, "n: must be positive");
  spec.P = row_major(member(doc, "P", source, "$"), n, source, "P");
  spec.q = vector_of(member(doc, "q", source, "$"), source, "q", n);
  spec.c = number(member(doc, "c", source, "$"), source, "c");

  const json& cons = member(doc, "constraints", source, "$");
  if (!cons.is_array()) fail(source, "constraints: expected an array");
  if (static_cast<Index>(cons.size()) != m) {
    fail(source, "constraints: m = " + std::to_string(m) + " but " +
                     std::to_string(cons.size()) + " entries given");
  }
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const std::string path = "constraints[" + std::to_string(i) + "]";
    QuadraticConstraint ci;
    ci.A = row_major(member(cons[i], "A", source, path), n, source, path + ".A");
    ci.b = vector_of(member(cons[i], "b", source, path), source, path + ".b", n);
    ci.d = number(member(cons[i], "d", source, path), source, path + ".d");
    spec.constraints.push_back(std::move(ci));
  }

  if (auto it = doc.find("saddle"); it != doc.end() && !it->is_null()) {
    SaddlePoint s;
    s.x_star = vector_of(member(*it, "x", source, "saddle"), source, "saddle.x", n);
    s.lambda_star = vector_of(member(*it, "lambda", source, "saddle"), source, "saddle.lambda", m);
    out.saddle = std::move(s);
  }
  if (auto it = doc.find("slater_candidate"); it != doc.end() && !it->is_null()) {
    out.slater_candidate = vector_of(*it, source, "slater_candidate", n);
  }
  return out;
}

ProblemFile read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), path.string());
}

std::string write_problem(const ProblemFile& file) {
  const auto& spec = file.spec;
  json doc;
  doc["n"] = spec.n();
  doc["m"] = spec.m();
  doc["P"] = to_json_row_major(spec.P);
  doc["q"] = to_json(spec.q);
  doc["c"] = spec.c;
  json cons = json::array();
  for (const auto& ci : spec.constraints) {
    cons.push_back({{"A", to_json_row_major(ci.A)}, {"b", to_json(ci.b)}, {"d", ci.d}});
  }
  doc["constraints"] = std::move(cons);
  if (file.saddle) {
    doc["saddle"] = {{"x", to_json(file.saddle->x_star)},
                     {"lambda", to_json(file.saddle->lambda_star)}};
  }
  if (file.slater_candidate) doc["slater_candidate"] = to_json(*file.slater_candidate);
  return doc.dump(2) + "\n";
}

}  // namespace saddleflow
