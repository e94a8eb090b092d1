#include "saddleflow/lyapunov.hpp"

#include "saddleflow/errors.hpp"

namespace saddleflow {

namespace {

void check_shapes(const SaddlePoint& saddle, const PrimalDualPoint& p) {
  if (saddle.x_star.size() != p.n()) throw DimensionError("x: does not match saddle x*");
  if (saddle.lambda_star.size() != p.m()) {
    throw DimensionError("lambda: does not match saddle lambda*");
  }
}

void check_gains(const GainMatrices& gains, const PrimalDualPoint& p) {
  gains.validate();
  if (gains.k1.size() != p.n() || gains.k2.size() != p.m()) {
    throw DimensionError("gains: sizes do not match the point");
  }
}

}  // namespace

double lyapunov_value(const SaddlePoint& saddle, const PrimalDualPoint& p) {
  check_shapes(saddle, p);
  return 0.5 * ((p.x - saddle.x_star).squaredNorm() + (p.lambda - saddle.lambda_star).squaredNorm());
}

double lyapunov_value_gains(const SaddlePoint& saddle, const GainMatrices& gains,
                            const PrimalDualPoint& p) {
  check_shapes(saddle, p);
  check_gains(gains, p);
  const Vector dx = p.x - saddle.x_star;
  const Vector dl = p.lambda - saddle.lambda_star;
  return 0.5 * ((dx.array().square() / gains.k1.array()).sum() +
                (dl.array().square() / gains.k2.array()).sum());
}

Vector lyapunov_gradient(const SaddlePoint& saddle, const PrimalDualPoint& p,
                         const std::optional<GainMatrices>& gains) {
  check_shapes(saddle, p);
  Vector grad(p.n() + p.m());
  grad << p.x - saddle.x_star, p.lambda - saddle.lambda_star;
  if (gains) {
    check_gains(*gains, p);
    grad.head(p.n()).array() /= gains->k1.array();
    grad.tail(p.m()).array() /= gains->k2.array();
  }
  return grad;
}

double lie_derivative(const ConcaveProgram& prog, const SaddlePoint& saddle,
                      const PrimalDualPoint& p, const std::optional<GainMatrices>& gains) {
  const Vector field =
      gains ? field_with_gains(prog, *gains, p) : field_primal_dual(prog, p).value;
  return lyapunov_gradient(saddle, p, gains).dot(field);
}

}  // namespace saddleflow
