#pragma once

#include "saddleflow/dynamics.hpp"
#include "saddleflow/problem.hpp"
#include "saddleflow/projection.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace saddleflow {

enum class Scheme { ProjectedEuler, ProjectedRk4 };

/// Accepts "euler", "rk4", "projected-euler", "projected-rk4".
Scheme parse_scheme(std::string_view name);
std::string_view scheme_name(Scheme scheme);

struct IntegratorConfig {
  Scheme scheme = Scheme::ProjectedEuler;
  double step = 1e-3;
  double horizon = 50.0;
  /// Stop as soon as the KKT residual drops to this value; 0 disables early stopping.
  double stop_kkt_tol = 1e-8;
  int record_stride = 1;

  void validate() const;
};

/// States beyond this norm abort the run.
inline constexpr double kDivergenceThreshold = 1e12;

enum class Termination { Horizon, KktTolerance };
std::string_view termination_name(Termination t);

/// Recorded solution. Every state lies in R^n x R^m_{>=0} exactly. Entries are spaced
/// step * record_stride apart, except possibly the last.
struct Trajectory {
  std::vector<double> times;
  std::vector<PrimalDualPoint> states;
  /// Lyapunov values (V, or V' when gains were used); empty without a reference saddle.
  std::vector<double> v_values;
  /// Mask of the primal-dual field at each recorded state.
  std::vector<ActiveMask> masks;
  Termination terminated_by = Termination::Horizon;

  std::size_t size() const { return states.size(); }
  bool empty() const { return states.empty(); }
  const PrimalDualPoint& final_state() const { return states.back(); }
};

/// proj(p + h X(p)), with X optionally scaled by the gains.
PrimalDualPoint step_projected_euler(const ConcaveProgram& prog, const PrimalDualPoint& p,
                                     double h,
                                     const std::optional<GainMatrices>& gains = std::nullopt);

/// Classical RK4 on the raw field with every stage state, and the result, projected.
PrimalDualPoint step_projected_rk4(const ConcaveProgram& prog, const PrimalDualPoint& p,
                                   double h,
                                   const std::optional<GainMatrices>& gains = std::nullopt);

/// Integrates from p0 until the horizon or the KKT stop tolerance. With a saddle,
/// v_values holds the matching Lyapunov function along the run.
/// Throws IntegrationError on non-finite values or when the state norm exceeds
/// kDivergenceThreshold.
Trajectory integrate(const ConcaveProgram& prog, const PrimalDualPoint& p0,
                     const IntegratorConfig& cfg,
                     const std::optional<GainMatrices>& gains = std::nullopt,
                     const std::optional<SaddlePoint>& saddle = std::nullopt);

/// max_k ||a.states[k] - b.states[k]|| over a shared time grid. Throws DimensionError
/// when the trajectories were recorded on different grids.
double sup_distance(const Trajectory& a, const Trajectory& b);

}  // namespace saddleflow
