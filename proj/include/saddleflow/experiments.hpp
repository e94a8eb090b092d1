#pragma once

#include "saddleflow/errors.hpp"
#include "saddleflow/integrator.hpp"
#include "saddleflow/modes.hpp"
#include "saddleflow/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace saddleflow {

// ---------------------------------------------------------------------------
// Pointwise certification sweeps

struct SamplingOptions {
  /// Points are drawn from the sublevel set V <= level around the saddle.
  double level = 100.0;
  /// Probability that a sample is pushed onto the boundary (some lambda_i = 0).
  double boundary_fraction = 0.4;
};

struct SampleSet {
  std::vector<PrimalDualPoint> points;
  std::size_t boundary_count = 0;
};

/// Seeded, reproducible samples of the domain inside V^{-1}(<= level).
SampleSet sample_sublevel_points(const SaddlePoint& saddle, std::size_t count, std::uint64_t seed,
                                 const SamplingOptions& options = {});

struct LieSweep {
  std::size_t samples = 0;
  std::size_t violations = 0;  // samples with value > tolerance
  double max_value = 0.0;
  std::optional<PrimalDualPoint> worst;
};

/// Evaluates lie_derivative on every point; samples are processed concurrently.
LieSweep lie_derivative_sweep(const ConcaveProgram& prog, const SaddlePoint& saddle,
                              const std::vector<PrimalDualPoint>& points, double tolerance,
                              const std::optional<GainMatrices>& gains = std::nullopt);

struct IdentitySweep {
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::optional<PrimalDualPoint> first_failure;
};

IdentitySweep projection_identity_sweep(const ConcaveProgram& prog,
                                        const std::vector<PrimalDualPoint>& points);

// ---------------------------------------------------------------------------
// Continuity with respect to the initial condition

struct ContinuityRow {
  int k = 0;
  double delta = 0.0;         // ||2^-k direction||
  double sup_distance = 0.0;  // sup_t ||gamma_k(t) - gamma(t)||
};

struct ContinuitySweep {
  std::vector<ContinuityRow> rows;
  std::vector<std::string> warnings;
};

/// Integrates from p0 and from p0 + 2^-k direction for k = 1..k_max over [0, T] and
/// reports the sup distance to the base trajectory. Perturbed starts outside the
/// domain are skipped with a warning. Runs the perturbed integrations concurrently.
ContinuitySweep continuity_experiment(const ConcaveProgram& prog, const PrimalDualPoint& p0,
                                      const Vector& direction, int k_max, double T,
                                      IntegratorConfig cfg);

// ---------------------------------------------------------------------------
// Hybrid-automaton counterexample on the scalar example

/// Candidate base points, scanned column by column (x ascending) and upward in lambda.
/// Each 0-switch base is perturbed along (-1, -1)/sqrt(2) by the listed radii.
struct WitnessGrid {
  double x_min = 0.3;
  double x_max = 0.9;
  double x_step = 0.05;
  double lambda_min = 0.005;
  double lambda_max = 0.5;
  double lambda_step = 0.005;
  std::vector<double> radii = {1e-3, 2e-3, 3e-3, 4e-3, 5e-3, 6e-3, 7e-3, 8e-3, 9e-3, 1e-2};
};

inline constexpr double kWitnessMaxInitialDistance = 1e-2;
inline constexpr double kWitnessMaxSupDistance = 0.1;

struct CounterexampleWitness {
  PrimalDualPoint base;
  PrimalDualPoint perturbed;
  Trajectory base_trajectory;
  Trajectory perturbed_trajectory;
  ModeTrace trace_base;
  ModeTrace trace_perturbed;
  double initial_distance = 0.0;
  double sup_distance = 0.0;
  std::size_t candidates_tried = 0;
};

/// Raised when no grid candidate yields a 0-switch / 2-switch pair.
class WitnessSearchError : public ExperimentError {
 public:
  WitnessSearchError(const std::string& what, std::size_t base_switches,
                     std::size_t perturbed_switches)
      : ExperimentError(what), base_switches(base_switches),
        perturbed_switches(perturbed_switches) {}

  // Switch counts of the first candidate pair examined, for diagnostics.
  std::size_t base_switches;
  std::size_t perturbed_switches;
};

/// Finds two starts within kWitnessMaxInitialDistance whose executions have 0 and 2 mode
/// switches on [0, T] while their continuous states stay within kWitnessMaxSupDistance.
/// Throws ValidationError when `spec` is not the scalar example and WitnessSearchError when the
/// grid has no witness.
CounterexampleWitness counterexample_witness(const QuadraticProgramSpec& spec, double T,
                                             IntegratorConfig cfg, const WitnessGrid& grid = {});

}  // namespace saddleflow
