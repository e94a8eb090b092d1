#include "saddleflow/scenarios.hpp"

#include "saddleflow/kkt.hpp"
#include "saddleflow/problem_io.hpp"
#include "saddleflow/trajectory_io.hpp"

#include <fstream>
#include <sstream>

namespace saddleflow {

using nlohmann::json;

namespace {

std::filesystem::path prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(dir.string() + ": cannot create output directory (" + ec.message() + ")");
  return dir;
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

SaddlePoint saddle_from_summary(const std::filesystem::path& path, Index n, Index m) {
  const json doc = read_json_file(path);
  const auto it = doc.find("omega_limit");
  if (it == doc.end() || it->is_null()) {
    throw UsageError(path.string() + ": summary has no omega-limit estimate to use as a saddle");
  }
  const PrimalDualPoint p = point_from_json(it->at("point"));
  if (p.n() != n || p.m() != m) throw DimensionError(path.string() + ": saddle has wrong shape");
  return {p.x, p.lambda};
}

std::vector<double> values(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

Vector parse_number_list(std::string_view text) {
  std::vector<double> out;
  if (!text.empty()) {
    std::size_t start = 0;
    while (true) {
      const auto pos = text.find(',', start);
      auto token = text.substr(start, pos == std::string_view::npos ? text.npos : pos - start);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      out.push_back(parse_double(token));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  }
  return Eigen::Map<const Vector>(out.data(), static_cast<Index>(out.size()));
}

GainMatrices split_gains(const Vector& flat, Index n, Index m) {
  if (flat.size() != n + m) {
    throw DimensionError("gains: expected " + std::to_string(n + m) + " values (K1 then K2), got " +
                         std::to_string(flat.size()));
  }
  GainMatrices gains{flat.head(n), flat.tail(m)};
  gains.validate();
  return gains;
}

ScenarioResult cmd_run(const RunOptions& options) {
  const ProblemFile file = read_problem_file(options.problem);
  const ConcaveProgram prog = load_quadratic(file.spec);
  const PrimalDualPoint p0{options.x0, options.lambda0};
  prog.check_point(p0);
  if (!p0.in_domain()) throw DomainError("lambda0: initial multipliers must be >= 0");
  std::optional<GainMatrices> gains;
  if (options.gains) gains = split_gains(*options.gains, prog.n(), prog.m());

  const Trajectory traj = integrate(prog, p0, options.config, gains, file.saddle);
  const PrimalDualPoint& final_state = traj.final_state();
  const KktReport kkt = kkt_residual(prog, final_state);

  ScenarioResult result;
  result.scenario_name = "run";
  result.seed = options.seed;
  result.metrics["final_kkt_total"] = kkt.total;
  result.metrics["recorded_states"] = static_cast<double>(traj.size());
  result.metrics["final_time"] = traj.times.back();

  const SlaterCheck slater = check_slater(prog, file.slater_candidate);
  if (slater.status == SlaterStatus::Skipped) result.warnings.push_back(slater.message);
  if (slater.status == SlaterStatus::Violated) {
    result.warnings.push_back("Slater check failed: " + slater.message);
  }

  json omega = nullptr;
  bool tail_ok = true;
  try {
    const OmegaLimitEstimate est = estimate_omega_limit(traj);
    omega = {{"point", to_json(est.point)},
             {"tail_radius", est.tail_radius},
             {"tail_fraction", est.tail_fraction},
             {"tail_states", est.tail_states},
             {"converged", est.converged(thresholds::kRunTailRadius)}};
    result.metrics["tail_radius"] = est.tail_radius;
    tail_ok = est.converged(thresholds::kRunTailRadius);
    if (file.saddle) {
      result.metrics["omega_distance_to_saddle"] = distance(est.point, file.saddle->point());
    }
  } catch (const ExperimentError& e) {
    result.warnings.push_back(std::string(e.what()) + "; omega-limit estimate omitted");
  }
  if (file.saddle) {
    result.metrics["final_distance_to_saddle"] = distance(final_state, file.saddle->point());
  }

  result.pass = kkt.total <= thresholds::kRunKkt && tail_ok;
  if (!result.pass) {
    result.diagnostic = "final KKT residual " + sci(kkt.total) + " (threshold " +
                        sci(thresholds::kRunKkt) + ")" +
                        (tail_ok ? "" : "; trajectory tail has not collapsed to a point");
  }

  const auto dir = prepare_dir(options.out_dir);
  const auto csv_path = dir / "trajectory.csv";
  const auto summary_path = dir / "summary.json";
  write_trajectory_csv(csv_path, traj);
  result.artifact_paths = {csv_path.string(), summary_path.string()};

  json summary = to_json(result);
  summary["scheme"] = std::string(scheme_name(options.config.scheme));
  summary["step"] = options.config.step;
  summary["horizon"] = options.config.horizon;
  summary["terminated_by"] = std::string(termination_name(traj.terminated_by));
  summary["initial_state"] = to_json(p0);
  summary["final_state"] = to_json(final_state);
  summary["kkt"] = to_json(kkt);
  summary["omega_limit"] = omega;
  if (gains) summary["gains"] = {{"K1", values(gains->k1)}, {"K2", values(gains->k2)}};
  write_json_file(summary_path, summary);
  return result;
}

ScenarioResult certify_program(const ConcaveProgram& prog, const SaddlePoint& saddle,
                               std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw UsageError("samples: must be positive (a zero-sample sweep proves nothing)");
  prog.check_point(saddle.point());

  const SampleSet set = sample_sublevel_points(
      saddle, samples, seed, {thresholds::kCertifyLevel, thresholds::kCertifyBoundaryFraction});
  const LieSweep lie = lie_derivative_sweep(prog, saddle, set.points, thresholds::kCertifyLie);
  const IdentitySweep identity = projection_identity_sweep(prog, set.points);
  const KktReport saddle_kkt = kkt_residual(prog, saddle.point());

  ScenarioResult result;
  result.scenario_name = "certify";
  result.seed = seed;
  result.metrics["samples"] = static_cast<double>(set.points.size());
  result.metrics["boundary_samples"] = static_cast<double>(set.boundary_count);
  result.metrics["lie_derivative_max"] = lie.max_value;
  result.metrics["lie_derivative_violations"] = static_cast<double>(lie.violations);
  result.metrics["projection_identity_failures"] = static_cast<double>(identity.failures);
  result.metrics["saddle_kkt_total"] = saddle_kkt.total;

  const bool lie_ok = lie.violations == 0;
  const bool identity_ok = identity.failures == 0;
  result.pass = lie_ok && identity_ok;

  std::ostringstream diag;
  if (!lie_ok) {
    diag << lie.violations << " samples with positive Lie derivative (max " << sci(lie.max_value)
         << " at x = " << lie.worst->x.transpose() << ", lambda = " << lie.worst->lambda.transpose()
         << ")";
  }
  if (!identity_ok) {
    if (!lie_ok) diag << "; ";
    diag << identity.failures << " samples violate the projected-field identity";
  }
  result.diagnostic = diag.str();
  if (saddle_kkt.total > thresholds::kRunKkt) {
    result.warnings.push_back("reference saddle has KKT residual " + sci(saddle_kkt.total));
  }
  return result;
}

ScenarioResult cmd_certify(const CertifyOptions& options) {
  if (options.samples == 0) throw UsageError("samples: must be positive (a zero-sample sweep proves nothing)");
  const ProblemFile file = read_problem_file(options.problem);
  const ConcaveProgram prog = load_quadratic(file.spec);
  SaddlePoint saddle;
  if (file.saddle) {
    saddle = *file.saddle;
  } else if (options.saddle_from) {
    saddle = saddle_from_summary(*options.saddle_from, prog.n(), prog.m());
  } else {
    throw UsageError("certify: no reference saddle; add a \"saddle\" entry to the problem file "
                     "or run `saddleflow run` first and pass its summary.json via --saddle");
  }
  ScenarioResult result = certify_program(prog, saddle, options.samples, options.seed);
  if (options.out_dir) {
    const auto path = prepare_dir(*options.out_dir) / "summary.json";
    result.artifact_paths.push_back(path.string());
    write_json_file(path, to_json(result));
  }
  return result;
}

ScenarioResult cmd_counterexample(const CounterexampleOptions& options) {
  ScenarioResult result;
  result.scenario_name = "counterexample";
  const auto dir = prepare_dir(options.out_dir);
  const auto summary_path = dir / "summary.json";

  try {
    const CounterexampleWitness w =
        counterexample_witness(example1_spec(), options.horizon, options.config);
    result.metrics["base_switches"] = static_cast<double>(w.trace_base.switch_count());
    result.metrics["perturbed_switches"] = static_cast<double>(w.trace_perturbed.switch_count());
    result.metrics["initial_distance"] = w.initial_distance;
    result.metrics["sup_distance"] = w.sup_distance;
    result.metrics["candidates_tried"] = static_cast<double>(w.candidates_tried);
    result.metrics["base_x0"] = w.base.x(0);
    result.metrics["base_lambda0"] = w.base.lambda(0);
    result.metrics["perturbed_x0"] = w.perturbed.x(0);
    result.metrics["perturbed_lambda0"] = w.perturbed.lambda(0);
    result.pass = w.trace_base.switch_count() == thresholds::kWitnessBaseSwitches &&
                  w.trace_perturbed.switch_count() == thresholds::kWitnessPerturbedSwitches &&
                  w.initial_distance <= kWitnessMaxInitialDistance &&
                  w.sup_distance < kWitnessMaxSupDistance;

    const auto base_csv = dir / "base_trajectory.csv";
    const auto pert_csv = dir / "perturbed_trajectory.csv";
    const auto traces_path = dir / "mode_traces.json";
    write_trajectory_csv(base_csv, w.base_trajectory);
    write_trajectory_csv(pert_csv, w.perturbed_trajectory);
    write_json_file(traces_path, {{"base", {{"initial_state", to_json(w.base)},
                                            {"trace", to_json(w.trace_base)}}},
                                  {"perturbed", {{"initial_state", to_json(w.perturbed)},
                                                 {"trace", to_json(w.trace_perturbed)}}}});
    result.artifact_paths = {base_csv.string(), pert_csv.string(), traces_path.string(),
                             summary_path.string()};
  } catch (const WitnessSearchError& e) {
    result.pass = false;
    result.metrics["base_switches"] = static_cast<double>(e.base_switches);
    result.metrics["perturbed_switches"] = static_cast<double>(e.perturbed_switches);
    result.diagnostic = e.what();
    result.artifact_paths = {summary_path.string()};
  }
  write_json_file(summary_path, to_json(result));
  return result;
}

ScenarioResult cmd_continuity(const ContinuityOptions& options) {
  const ProblemFile file = read_problem_file(options.problem);
  const ConcaveProgram prog = load_quadratic(file.spec);
  if (options.p0.size() != prog.n() + prog.m()) {
    throw DimensionError("p0: expected " + std::to_string(prog.n() + prog.m()) + " values");
  }
  const auto p0 = PrimalDualPoint::from_stacked(options.p0, prog.n());
  if (!p0.in_domain()) throw DomainError("p0: initial multipliers must be >= 0");

  const ContinuitySweep sweep =
      continuity_experiment(prog, p0, options.direction, options.k_max, options.horizon, options.config);
  if (sweep.rows.empty()) {
    throw DomainError("continuity: every perturbation leaves the domain; flip the direction's "
                      "multiplier components");
  }

  ScenarioResult result;
  result.scenario_name = "continuity";
  result.warnings = sweep.warnings;
  if (options.k_max == 1) result.warnings.push_back("insufficient depth: only one perturbation level");

  bool nonincreasing = true;
  double max_ratio = 0.0;
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const auto& row = sweep.rows[i];
    if (i > 0 && row.sup_distance > sweep.rows[i - 1].sup_distance) nonincreasing = false;
    if (row.delta > 0.0) max_ratio = std::max(max_ratio, row.sup_distance / row.delta);
  }
  const auto& last = sweep.rows.back();
  // A zero direction gives delta = sup = 0, which counts as within the bound.
  const bool final_ok = last.sup_distance < thresholds::kContinuityFactor * last.delta ||
                        (last.delta == 0.0 && last.sup_distance == 0.0);
  result.metrics["rows"] = static_cast<double>(sweep.rows.size());
  result.metrics["final_delta"] = last.delta;
  result.metrics["final_sup_distance"] = last.sup_distance;
  result.metrics["max_sup_over_delta"] = max_ratio;
  result.metrics["nonincreasing"] = nonincreasing ? 1.0 : 0.0;
  result.pass = nonincreasing && final_ok;
  if (!nonincreasing) result.diagnostic = "sup distance increased between consecutive levels";
  if (!final_ok) {
    if (!result.diagnostic.empty()) result.diagnostic += "; ";
    result.diagnostic += "final sup distance " + sci(last.sup_distance) + " is not below " +
                         sci(thresholds::kContinuityFactor * last.delta);
  }

  const auto dir = prepare_dir(options.out_dir);
  const auto table_path = dir / "continuity.csv";
  const auto summary_path = dir / "summary.json";
  {
    std::ofstream out(table_path);
    if (!out) throw Error(table_path.string() + ": cannot open for writing");
    out << "k,delta,sup_distance\n";
    for (const auto& row : sweep.rows) {
      out << row.k << ',' << format_double(row.delta) << ',' << format_double(row.sup_distance) << '\n';
    }
  }
  result.artifact_paths = {table_path.string(), summary_path.string()};
  write_json_file(summary_path, to_json(result));
  return result;
}

}  // namespace saddleflow
