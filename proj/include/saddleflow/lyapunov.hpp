#pragma once

#include "saddleflow/dynamics.hpp"
#include "saddleflow/problem.hpp"

#include <optional>

namespace saddleflow {

/// V(x, lambda) = 1/2 (||x - x*||^2 + ||lambda - lambda*||^2).
double lyapunov_value(const SaddlePoint& saddle, const PrimalDualPoint& p);

/// Weighted V'(x, lambda) = 1/2 ((x-x*)^T K1^-1 (x-x*) + (lambda-lambda*)^T K2^-1 (lambda-lambda*)).
double lyapunov_value_gains(const SaddlePoint& saddle, const GainMatrices& gains,
                            const PrimalDualPoint& p);

/// Stacked gradient of V (or V' when gains are given).
Vector lyapunov_gradient(const SaddlePoint& saddle, const PrimalDualPoint& p,
                         const std::optional<GainMatrices>& gains = std::nullopt);

/// grad V(p)^T field(p), pairing V with the primal-dual field and V' with the gains field.
/// Nonpositive on the domain for a concave program.
double lie_derivative(const ConcaveProgram& prog, const SaddlePoint& saddle,
                      const PrimalDualPoint& p,
                      const std::optional<GainMatrices>& gains = std::nullopt);

}  // namespace saddleflow
