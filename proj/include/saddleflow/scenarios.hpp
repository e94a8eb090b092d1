#pragma once

#include "saddleflow/experiments.hpp"
#include "saddleflow/integrator.hpp"
#include "saddleflow/report_io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>

namespace saddleflow {

/// Pass thresholds of the CLI scenarios.
namespace thresholds {
/// run: the final state must satisfy KKT to this level ...
inline constexpr double kRunKkt = 1e-6;
/// ... and the trajectory tail must have collapsed to a point of this radius.
inline constexpr double kRunTailRadius = 1e-3;
/// certify: largest admissible Lie derivative (roundoff allowance on "<= 0").
inline constexpr double kCertifyLie = 1e-12;
/// certify: sublevel set V <= level sampled around the reference saddle.
inline constexpr double kCertifyLevel = 100.0;
/// certify: share of samples placed on the boundary of the multiplier orthant.
inline constexpr double kCertifyBoundaryFraction = 0.4;
/// counterexample: switch counts of the two executions.
inline constexpr std::size_t kWitnessBaseSwitches = 0;
inline constexpr std::size_t kWitnessPerturbedSwitches = 2;
/// continuity: final sup distance must stay below this multiple of the final delta.
inline constexpr double kContinuityFactor = 10.0;
}  // namespace thresholds

/// Exit codes of the CLI.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
  std::filesystem::path problem;
  Vector x0;
  Vector lambda0;
  IntegratorConfig config;
  /// K1 entries followed by K2 entries (n + m values).
  std::optional<Vector> gains;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
};

/// Writes trajectory.csv and summary.json into out_dir.
ScenarioResult cmd_run(const RunOptions& options);

struct CertifyOptions {
  std::filesystem::path problem;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  /// summary.json written by `run`; used when the problem file has no "saddle" entry.
  std::optional<std::filesystem::path> saddle_from;
  std::optional<std::filesystem::path> out_dir;
};

/// Lie-derivative and projection-identity sweeps over the problem file.
ScenarioResult cmd_certify(const CertifyOptions& options);

/// Sweep behind cmd_certify, on an already constructed program.
ScenarioResult certify_program(const ConcaveProgram& prog, const SaddlePoint& saddle,
                               std::size_t samples, std::uint64_t seed);

struct CounterexampleOptions {
  double horizon = 50.0;
  IntegratorConfig config;
  std::filesystem::path out_dir = "out";
};

/// Writes base_trajectory.csv, perturbed_trajectory.csv, mode_traces.json, summary.json.
ScenarioResult cmd_counterexample(const CounterexampleOptions& options);

struct ContinuityOptions {
  std::filesystem::path problem;
  Vector p0;  // stacked (x, lambda)
  Vector direction;
  int k_max = 8;
  double horizon = 10.0;
  IntegratorConfig config;
  std::filesystem::path out_dir = "out";
};

/// Writes continuity.csv (k, delta, sup_distance) and summary.json.
ScenarioResult cmd_continuity(const ContinuityOptions& options);

/// Comma-separated list of numbers ("1,2.5,-3"); an empty string is an empty vector.
Vector parse_number_list(std::string_view text);

/// Reads the gains vector into K1/K2 for a program of size (n, m).
GainMatrices split_gains(const Vector& flat, Index n, Index m);

}  // namespace saddleflow
