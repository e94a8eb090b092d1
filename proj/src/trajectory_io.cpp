#include "saddleflow/trajectory_io.hpp"

#include "saddleflow/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace saddleflow {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& what) {
  throw ParseError("trajectory csv line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError("not a number: '" + std::string(token) + "'");
  }
  return v;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  if (traj.empty()) throw DimensionError("trajectory csv: empty trajectory");
  const Index n = traj.states.front().n();
  const Index m = traj.states.front().m();
  const bool with_v = !traj.v_values.empty();
  if (with_v && traj.v_values.size() != traj.size()) {
    throw DimensionError("trajectory csv: v_values length differs from states");
  }

  out << "t";
  for (Index i = 0; i < n; ++i) out << ",x_" << i;
  for (Index i = 0; i < m; ++i) out << ",lambda_" << i;
  out << ",V,mask\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& p = traj.states[k];
    out << format_double(traj.times[k]);
    for (Index i = 0; i < n; ++i) out << ',' << format_double(p.x(i));
    for (Index i = 0; i < m; ++i) out << ',' << format_double(p.lambda(i));
    out << ',';
    if (with_v) out << format_double(traj.v_values[k]);
    out << ',' << traj.masks[k].bits() << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  write_trajectory_csv(out, traj);
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trajectory csv: missing header");
  const auto header = split(line, ',');
  if (header.size() < 3 || header.front() != "t" || header[header.size() - 2] != "V" ||
      header.back() != "mask") {
    bad_line(1, "unexpected header '" + line + "'");
  }
  Index n = 0;
  Index m = 0;
  for (std::size_t i = 1; i + 2 < header.size(); ++i) {
    const std::string expected_x = "x_" + std::to_string(n);
    const std::string expected_l = "lambda_" + std::to_string(m);
    if (m == 0 && header[i] == expected_x) {
      ++n;
    } else if (header[i] == expected_l) {
      ++m;
    } else {
      bad_line(1, "unexpected column '" + std::string(header[i]) + "'");
    }
  }

  Trajectory traj;
  std::size_t line_no = 1;
  bool with_v = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      bad_line(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
    }
    try {
      PrimalDualPoint p{Vector(n), Vector(m)};
      traj.times.push_back(parse_double(fields[0]));
      for (Index i = 0; i < n; ++i) p.x(i) = parse_double(fields[static_cast<std::size_t>(1 + i)]);
      for (Index i = 0; i < m; ++i) {
        p.lambda(i) = parse_double(fields[static_cast<std::size_t>(1 + n + i)]);
      }
      const auto v_field = fields[fields.size() - 2];
      if (traj.states.empty()) with_v = !v_field.empty();
      if (with_v != !v_field.empty()) bad_line(line_no, "V column present on some rows only");
      if (with_v) traj.v_values.push_back(parse_double(v_field));
      auto mask = ActiveMask::from_bits(fields.back());
      if (static_cast<Index>(mask.flags.size()) != m) bad_line(line_no, "mask length differs from m");
      traj.states.push_back(std::move(p));
      traj.masks.push_back(std::move(mask));
    } catch (const ParseError& e) {
      if (std::string_view(e.what()).starts_with("trajectory csv")) throw;
      bad_line(line_no, e.what());
    }
  }
  if (traj.empty()) throw ParseError("trajectory csv: no data rows");
  return traj;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  return read_trajectory_csv(in);
}

}  // namespace saddleflow
