#include "saddleflow/experiments.hpp"

#include "saddleflow/dynamics.hpp"
#include "saddleflow/lyapunov.hpp"
#include "parallel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace saddleflow {

SampleSet sample_sublevel_points(const SaddlePoint& saddle, std::size_t count, std::uint64_t seed,
                                 const SamplingOptions& options) {
  const Index n = saddle.x_star.size();
  const Index m = saddle.lambda_star.size();
  if (!(options.level > 0.0)) throw DomainError("sampling: level must be positive");
  const double r = std::sqrt(2.0 * options.level);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  SampleSet set;
  set.points.reserve(count);
  constexpr int kMaxAttempts = 10000;
  while (set.points.size() < count) {
    const bool boundary = m > 0 && coin(rng) < options.boundary_fraction;
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxAttempts && !accepted; ++attempt) {
      PrimalDualPoint p{Vector(n), Vector(m)};
      for (Index i = 0; i < n; ++i) p.x(i) = saddle.x_star(i) + r * unit(rng);
      for (Index i = 0; i < m; ++i) {
        const double lo = std::max(0.0, saddle.lambda_star(i) - r);
        const double hi = saddle.lambda_star(i) + r;
        p.lambda(i) = lo + (hi - lo) * 0.5 * (unit(rng) + 1.0);
      }
      if (boundary) {
        bool any = false;
        for (Index i = 0; i < m; ++i) {
          if (coin(rng) < 0.5) {
            p.lambda(i) = 0.0;
            any = true;
          }
        }
        if (!any) p.lambda(static_cast<Index>(rng() % static_cast<std::uint64_t>(m))) = 0.0;
      }
      if (lyapunov_value(saddle, p) <= options.level) {
        set.points.push_back(std::move(p));
        if (boundary) ++set.boundary_count;
        accepted = true;
      }
    }
    if (!accepted) throw ExperimentError("sampling: sublevel set too small for boundary samples");
  }
  return set;
}

LieSweep lie_derivative_sweep(const ConcaveProgram& prog, const SaddlePoint& saddle,
                              const std::vector<PrimalDualPoint>& points, double tolerance,
                              const std::optional<GainMatrices>& gains) {
  const auto values = detail::parallel_map(
      points.size(), [&](std::size_t i) { return lie_derivative(prog, saddle, points[i], gains); });
  LieSweep sweep;
  sweep.samples = points.size();
  sweep.max_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > tolerance || std::isnan(values[i])) ++sweep.violations;
    if (values[i] > sweep.max_value || std::isnan(values[i])) {
      sweep.max_value = values[i];
      sweep.worst = points[i];
    }
  }
  return sweep;
}

IdentitySweep projection_identity_sweep(const ConcaveProgram& prog,
                                        const std::vector<PrimalDualPoint>& points) {
  const auto ok = detail::parallel_map(points.size(), [&](std::size_t i) {
    return static_cast<char>(verify_projection_identity(prog, points[i]));
  });
  IdentitySweep sweep;
  sweep.samples = points.size();
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (!ok[i]) {
      ++sweep.failures;
      if (!sweep.first_failure) sweep.first_failure = points[i];
    }
  }
  return sweep;
}

ContinuitySweep continuity_experiment(const ConcaveProgram& prog, const PrimalDualPoint& p0,
                                      const Vector& direction, int k_max, double T,
                                      IntegratorConfig cfg) {
  prog.check_point(p0);
  if (direction.size() != prog.n() + prog.m()) {
    throw DimensionError("direction: expected length " + std::to_string(prog.n() + prog.m()));
  }
  if (k_max < 1) throw UsageError("k-max must be >= 1");
  cfg.horizon = T;
  cfg.stop_kkt_tol = 0.0;  // every run must share the base time grid

  const Trajectory base = integrate(prog, p0, cfg);
  const Vector y0 = p0.stacked();

  struct Item {
    bool skipped = false;
    ContinuityRow row;
  };
  const auto items = detail::parallel_map(static_cast<std::size_t>(k_max), [&](std::size_t i) {
    const int k = static_cast<int>(i) + 1;
    const Vector offset = std::ldexp(1.0, -k) * direction;
    const auto start = PrimalDualPoint::from_stacked(y0 + offset, prog.n());
    Item item;
    item.row = {k, offset.norm(), 0.0};
    if (!start.in_domain()) {
      item.skipped = true;
      return item;
    }
    item.row.sup_distance = sup_distance(base, integrate(prog, start, cfg));
    return item;
  });

  ContinuitySweep sweep;
  for (const auto& item : items) {
    if (item.skipped) {
      sweep.warnings.push_back("k = " + std::to_string(item.row.k) +
                               ": perturbed start leaves the domain (lambda < 0); skipped");
    } else {
      sweep.rows.push_back(item.row);
    }
  }
  return sweep;
}

CounterexampleWitness counterexample_witness(const QuadraticProgramSpec& spec, double T,
                                             IntegratorConfig cfg, const WitnessGrid& grid) {
  if (!is_example1(spec)) {
    throw ValidationError("counterexample: program is not the scalar example "
                          "(maximize -(x-5)^2 subject to x^2 - 1 <= 0)");
  }
  const ConcaveProgram prog = load_quadratic(spec);
  cfg.horizon = T;
  cfg.stop_kkt_tol = 0.0;
  cfg.validate();
  if (grid.radii.empty()) throw UsageError("witness grid: no perturbation radii");
  for (double r : grid.radii) {
    if (!(r > 0.0 && r <= kWitnessMaxInitialDistance)) {
      throw UsageError("witness grid: radii must lie in (0, 1e-2]");
    }
  }

  const SaddlePoint saddle = example1_saddle();
  auto run = [&](const PrimalDualPoint& p) { return integrate(prog, p, cfg, std::nullopt, saddle); };
  auto point = [](double x, double lambda) {
    return PrimalDualPoint{Vector::Constant(1, x), Vector::Constant(1, lambda)};
  };

  const auto nx = static_cast<int>(std::floor((grid.x_max - grid.x_min) / grid.x_step + 1e-9)) + 1;
  const auto nl =
      static_cast<int>(std::floor((grid.lambda_max - grid.lambda_min) / grid.lambda_step + 1e-9)) + 1;
  const double diag = 1.0 / std::sqrt(2.0);

  std::size_t tried = 0;
  std::optional<std::pair<std::size_t, std::size_t>> first_pair;
  for (int ix = 0; ix < nx; ++ix) {
    const double x0 = grid.x_min + ix * grid.x_step;
    for (int il = 0; il < nl; ++il) {
      const double l0 = grid.lambda_min + il * grid.lambda_step;
      const PrimalDualPoint base = point(x0, l0);
      Trajectory base_traj = run(base);
      ModeTrace base_trace = extract_mode_trace(base_traj);
      ++tried;
      if (base_trace.switch_count() != 0) continue;

      for (double r : grid.radii) {
        const PrimalDualPoint pert = point(x0 - r * diag, l0 - r * diag);
        if (!pert.in_domain()) break;
        Trajectory pert_traj = run(pert);
        ModeTrace pert_trace = extract_mode_trace(pert_traj);
        ++tried;
        if (!first_pair) first_pair.emplace(base_trace.switch_count(), pert_trace.switch_count());
        if (pert_trace.switch_count() != 2) continue;
        const double sup = sup_distance(base_traj, pert_traj);
        const double d0 = distance(base, pert);
        if (sup >= kWitnessMaxSupDistance || d0 > kWitnessMaxInitialDistance) continue;
        return {base,           pert,      std::move(base_traj), std::move(pert_traj),
                std::move(base_trace), std::move(pert_trace), d0, sup, tried};
      }
      // Higher bases in this column sit further from the separatrix.
      break;
    }
  }

  std::ostringstream os;
  os << "counterexample: no witness pair found among " << tried
     << " candidate runs on [0, " << T
     << "]; widen the witness grid or lengthen the horizon so trajectories reach the boundary";
  const auto counts = first_pair.value_or(std::make_pair<std::size_t, std::size_t>(0, 0));
  throw WitnessSearchError(os.str(), counts.first, counts.second);
}

}  // namespace saddleflow
