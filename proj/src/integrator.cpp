#include "saddleflow/integrator.hpp"

#include "saddleflow/errors.hpp"
#include "saddleflow/kkt.hpp"
#include "saddleflow/lyapunov.hpp"

#include <cmath>
#include <sstream>

namespace saddleflow {

namespace {

// Raw field, scaled by the gains when present.
Vector drift(const ConcaveProgram& prog, const PrimalDualPoint& p,
             const std::optional<GainMatrices>& gains) {
  Vector v = field_unprojected(prog, p);
  if (gains) {
    v.head(prog.n()).array() *= gains->k1.array();
    v.tail(prog.m()).array() *= gains->k2.array();
  }
  if (!v.allFinite()) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite field value at state " << p.stacked().transpose();
    throw IntegrationError(os.str());
  }
  return v;
}

void check_step_inputs(const ConcaveProgram& prog, const PrimalDualPoint& p, double h,
                       const std::optional<GainMatrices>& gains) {
  prog.check_point(p);
  if (!p.in_domain()) throw DomainError("step: lambda must be >= 0");
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("step: h must be positive");
  if (gains) {
    gains->validate();
    gains->check_dimensions(prog);
  }
}

PrimalDualPoint euler_unchecked(const ConcaveProgram& prog, const PrimalDualPoint& p, double h,
                                const std::optional<GainMatrices>& gains) {
  const Vector y = p.stacked();
  return PrimalDualPoint::from_stacked(project_onto_domain(y + h * drift(prog, p, gains), prog.n()),
                                       prog.n());
}

PrimalDualPoint rk4_unchecked(const ConcaveProgram& prog, const PrimalDualPoint& p, double h,
                              const std::optional<GainMatrices>& gains) {
  const Index n = prog.n();
  const Vector y = p.stacked();
  auto stage = [&](const Vector& z) { return PrimalDualPoint::from_stacked(project_onto_domain(z, n), n); };
  const Vector k1 = drift(prog, p, gains);
  const Vector k2 = drift(prog, stage(y + 0.5 * h * k1), gains);
  const Vector k3 = drift(prog, stage(y + 0.5 * h * k2), gains);
  const Vector k4 = drift(prog, stage(y + h * k3), gains);
  return stage(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace

Scheme parse_scheme(std::string_view name) {
  if (name == "euler" || name == "projected-euler") return Scheme::ProjectedEuler;
  if (name == "rk4" || name == "projected-rk4") return Scheme::ProjectedRk4;
  throw UsageError("unknown scheme '" + std::string(name) + "' (expected euler or rk4)");
}

std::string_view scheme_name(Scheme scheme) {
  return scheme == Scheme::ProjectedEuler ? "projected-euler" : "projected-rk4";
}

std::string_view termination_name(Termination t) {
  return t == Termination::Horizon ? "horizon" : "kkt-tolerance";
}

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw UsageError("h: step size must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw UsageError("T: horizon must be positive");
  if (step > horizon) throw UsageError("h: step size exceeds the horizon T");
  if (!(stop_kkt_tol >= 0.0)) throw UsageError("kkt-tol: must be nonnegative");
  if (record_stride < 1) throw UsageError("record stride must be >= 1");
}

PrimalDualPoint step_projected_euler(const ConcaveProgram& prog, const PrimalDualPoint& p,
                                     double h, const std::optional<GainMatrices>& gains) {
  check_step_inputs(prog, p, h, gains);
  return euler_unchecked(prog, p, h, gains);
}

PrimalDualPoint step_projected_rk4(const ConcaveProgram& prog, const PrimalDualPoint& p,
                                   double h, const std::optional<GainMatrices>& gains) {
  check_step_inputs(prog, p, h, gains);
  return rk4_unchecked(prog, p, h, gains);
}

Trajectory integrate(const ConcaveProgram& prog, const PrimalDualPoint& p0,
                     const IntegratorConfig& cfg, const std::optional<GainMatrices>& gains,
                     const std::optional<SaddlePoint>& saddle) {
  cfg.validate();
  check_step_inputs(prog, p0, cfg.step, gains);
  if (saddle) {
    prog.check_point(saddle->point());
  }

  const auto advance = cfg.scheme == Scheme::ProjectedEuler ? euler_unchecked : rk4_unchecked;

  Trajectory traj;
  auto record = [&](double t, const PrimalDualPoint& p) {
    traj.times.push_back(t);
    traj.states.push_back(p);
    traj.masks.push_back(field_primal_dual(prog, p).mask);
    if (saddle) {
      traj.v_values.push_back(gains ? lyapunov_value_gains(*saddle, *gains, p)
                                    : lyapunov_value(*saddle, p));
    }
  };
  auto converged = [&](const PrimalDualPoint& p) {
    return cfg.stop_kkt_tol > 0.0 && kkt_residual(prog, p).total <= cfg.stop_kkt_tol;
  };

  // Full steps first; a shorter closing step covers a horizon that is not a multiple of h.
  const double ratio = cfg.horizon / cfg.step;
  const auto full_steps = static_cast<long long>(std::floor(ratio * (1.0 + 1e-12)));
  const double remainder = cfg.horizon - static_cast<double>(full_steps) * cfg.step;
  const bool partial = remainder > 1e-12 * cfg.horizon;
  const long long total_steps = full_steps + (partial ? 1 : 0);

  PrimalDualPoint p = p0;
  record(0.0, p);
  if (converged(p)) {
    traj.terminated_by = Termination::KktTolerance;
    return traj;
  }

  for (long long k = 1; k <= total_steps; ++k) {
    const bool last = k == total_steps;
    const double h = (partial && last) ? remainder : cfg.step;
    p = advance(prog, p, h, gains);

    const Vector y = p.stacked();
    if (!y.allFinite() || y.norm() > kDivergenceThreshold) {
      std::ostringstream os;
      os.precision(17);
      os << "integration diverged at step " << k << " (t = " << static_cast<double>(k) * cfg.step
         << "); state " << y.transpose()
         << " exceeds the divergence guard; check that the objective is concave";
      throw IntegrationError(os.str());
    }

    const double t = last ? cfg.horizon : static_cast<double>(k) * cfg.step;
    const bool stop = converged(p);
    if (stop || last || k % cfg.record_stride == 0) record(t, p);
    if (stop) {
      traj.terminated_by = Termination::KktTolerance;
      return traj;
    }
  }
  traj.terminated_by = Termination::Horizon;
  return traj;
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size() || a.times != b.times) {
    throw DimensionError("sup distance: trajectories are recorded on different time grids");
  }
  double sup = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sup = std::max(sup, distance(a.states[k], b.states[k]));
  return sup;
}

}  // namespace saddleflow
