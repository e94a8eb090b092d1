#include "saddleflow/modes.hpp"

#include "saddleflow/errors.hpp"

#include <cmath>

namespace saddleflow {

std::string_view mode_name(Mode mode) {
  return mode == Mode::ProjectionActive ? "projection-active" : "projection-inactive";
}

Mode parse_mode(std::string_view name) {
  if (name == "projection-active") return Mode::ProjectionActive;
  if (name == "projection-inactive") return Mode::ProjectionInactive;
  throw ParseError("unknown mode '" + std::string(name) + "'");
}

ModeTrace extract_mode_trace(const Trajectory& traj) {
  if (traj.empty()) throw DomainError("mode trace: empty trajectory");
  if (traj.masks.size() != traj.size()) throw DomainError("mode trace: masks not recorded");

  auto mode_at = [&](std::size_t k) {
    return traj.masks[k].any() ? Mode::ProjectionActive : Mode::ProjectionInactive;
  };

  ModeTrace trace;
  ModeSegment current{traj.times.front(), traj.times.front(), mode_at(0)};
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const Mode mode = mode_at(k);
    if (mode != current.mode) {
      const double t_switch = 0.5 * (traj.times[k - 1] + traj.times[k]);
      current.t_end = t_switch;
      trace.segments.push_back(current);
      trace.switch_times.push_back(t_switch);
      current = {t_switch, t_switch, mode};
    }
  }
  current.t_end = traj.times.back();
  trace.segments.push_back(current);
  return trace;
}

OmegaLimitEstimate estimate_omega_limit(const Trajectory& traj, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw DomainError("omega limit: tail_fraction must lie in (0, 1]");
  }
  const auto count = static_cast<std::size_t>(
      std::ceil(tail_fraction * static_cast<double>(traj.size())));
  if (count < kMinTailStates) {
    throw ExperimentError("omega limit: trajectory too short (tail has " + std::to_string(count) +
                          " states, need " + std::to_string(kMinTailStates) + ")");
  }
  const std::size_t first = traj.size() - count;
  const Index n = traj.states.front().n();
  const Index m = traj.states.front().m();

  Vector centroid = Vector::Zero(n + m);
  for (std::size_t k = first; k < traj.size(); ++k) centroid += traj.states[k].stacked();
  centroid /= static_cast<double>(count);

  double radius = 0.0;
  for (std::size_t k = first; k < traj.size(); ++k) {
    radius = std::max(radius, (traj.states[k].stacked() - centroid).norm());
  }
  return {PrimalDualPoint::from_stacked(centroid, n), radius, tail_fraction, count};
}

}  // namespace saddleflow
