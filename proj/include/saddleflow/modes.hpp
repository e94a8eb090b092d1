#pragma once

#include "saddleflow/integrator.hpp"

#include <string_view>
#include <vector>

namespace saddleflow {

/// Discrete mode of the switched primal-dual flow: some multiplier held at zero by the
/// projection, or none.
enum class Mode { ProjectionInactive, ProjectionActive };
std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view name);

struct ModeSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  Mode mode = Mode::ProjectionInactive;

  bool operator==(const ModeSegment&) const = default;
};

/// Hybrid execution of a trajectory at sample resolution. Segments partition
/// [0, t_final] and alternate in mode; switch_times are their interior boundaries.
struct ModeTrace {
  std::vector<ModeSegment> segments;
  std::vector<double> switch_times;

  std::size_t switch_count() const { return switch_times.size(); }
  bool operator==(const ModeTrace&) const = default;
};

/// Reads the recorded masks. A switch is placed at the midpoint of the two samples
/// whose modes differ, so its resolution is step * record_stride. A single-sample
/// trajectory yields one degenerate segment [0, 0].
ModeTrace extract_mode_trace(const Trajectory& traj);

inline constexpr double kDefaultTailFraction = 0.1;
inline constexpr std::size_t kMinTailStates = 10;

/// Tail centroid of a trajectory as an estimate of its (single-point) omega-limit set.
struct OmegaLimitEstimate {
  PrimalDualPoint point;
  double tail_radius = 0.0;  // max distance of a tail state to the centroid
  double tail_fraction = kDefaultTailFraction;
  std::size_t tail_states = 0;

  bool converged(double tolerance) const { return tail_radius < tolerance; }
};

/// Uses the last ceil(tail_fraction * N) states. Throws ExperimentError when that is
/// fewer than kMinTailStates, DomainError for tail_fraction outside (0, 1].
OmegaLimitEstimate estimate_omega_limit(const Trajectory& traj,
                                        double tail_fraction = kDefaultTailFraction);

}  // namespace saddleflow
