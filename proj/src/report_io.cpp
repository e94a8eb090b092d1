#include "saddleflow/report_io.hpp"

#include "saddleflow/errors.hpp"

#include <fstream>
#include <sstream>

namespace saddleflow {

using nlohmann::json;

namespace {

template <typename Fn>
auto guarded(const char* what, Fn fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

json vector_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vector vector_from(const json& j) {
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j.at(i).get<double>();
  return v;
}

}  // namespace

json to_json(const KktReport& r) {
  return {{"stationarity", r.stationarity},
          {"primal_feas", r.primal_feas},
          {"dual_feas", r.dual_feas},
          {"comp_slack", r.comp_slack},
          {"total", r.total}};
}

KktReport kkt_report_from_json(const json& j) {
  return guarded("kkt report", [&] {
    KktReport r;
    r.stationarity = j.at("stationarity").get<double>();
    r.primal_feas = j.at("primal_feas").get<double>();
    r.dual_feas = j.at("dual_feas").get<double>();
    r.comp_slack = j.at("comp_slack").get<double>();
    r.total = j.at("total").get<double>();
    return r;
  });
}

json to_json(const ModeTrace& trace) {
  json segments = json::array();
  for (const auto& s : trace.segments) {
    segments.push_back(
        {{"t_start", s.t_start}, {"t_end", s.t_end}, {"mode", std::string(mode_name(s.mode))}});
  }
  return {{"segments", std::move(segments)},
          {"switch_times", trace.switch_times},
          {"switch_count", trace.switch_count()}};
}

ModeTrace mode_trace_from_json(const json& j) {
  return guarded("mode trace", [&] {
    ModeTrace trace;
    for (const auto& s : j.at("segments")) {
      trace.segments.push_back({s.at("t_start").get<double>(), s.at("t_end").get<double>(),
                                parse_mode(s.at("mode").get<std::string>())});
    }
    trace.switch_times = j.at("switch_times").get<std::vector<double>>();
    return trace;
  });
}

json to_json(const ScenarioResult& r) {
  return {{"scenario", r.scenario_name},
          {"pass", r.pass},
          {"seed", r.seed},
          {"metrics", r.metrics},
          {"artifacts", r.artifact_paths},
          {"warnings", r.warnings},
          {"diagnostic", r.diagnostic}};
}

ScenarioResult scenario_result_from_json(const json& j) {
  return guarded("scenario result", [&] {
    ScenarioResult r;
    r.scenario_name = j.at("scenario").get<std::string>();
    r.pass = j.at("pass").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.metrics = j.at("metrics").get<std::map<std::string, double>>();
    r.artifact_paths = j.at("artifacts").get<std::vector<std::string>>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.diagnostic = j.at("diagnostic").get<std::string>();
    return r;
  });
}

json to_json(const PrimalDualPoint& p) {
  return {{"x", vector_json(p.x)}, {"lambda", vector_json(p.lambda)}};
}

PrimalDualPoint point_from_json(const json& j) {
  return guarded("point", [&] {
    return PrimalDualPoint{vector_from(j.at("x")), vector_from(j.at("lambda"))};
  });
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  out << doc.dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace saddleflow
