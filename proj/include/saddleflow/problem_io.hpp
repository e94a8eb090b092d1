#pragma once

#include "saddleflow/problem.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace saddleflow {

/// Contents of a problem file:
///
///   { "n": 1, "m": 1, "P": [2], "q": [10], "c": -25,
///     "constraints": [ { "A": [2], "b": [0], "d": -1 } ],
///     "saddle": { "x": [1], "lambda": [4] },       // optional reference optimizer
///     "slater_candidate": [0] }                      // optional interior point
///
/// Matrices are flattened row-major.
struct ProblemFile {
  QuadraticProgramSpec spec;
  std::optional<SaddlePoint> saddle;
  std::optional<Vector> slater_candidate;
};

/// Parses and structurally checks a problem document. Definiteness is not checked here
/// (see QuadraticProgramSpec::validate). Throws ParseError; syntax errors report
/// "source:line:column".
ProblemFile parse_problem(std::string_view text, std::string_view source = "<input>");
ProblemFile read_problem_file(const std::filesystem::path& path);

/// Serializes with round-trip precision, so parse_problem(write_problem(f)) == f.
std::string write_problem(const ProblemFile& file);

}  // namespace saddleflow
