#pragma once

#include "saddleflow/problem.hpp"
#include "saddleflow/projection.hpp"

namespace saddleflow {

/// Positive diagonal gains K1 (n entries) and K2 (m entries).
struct GainMatrices {
  Vector k1;
  Vector k2;

  /// Throws DomainError on a nonpositive or non-finite entry.
  void validate() const;
  /// Throws DimensionError when the sizes do not match the program.
  void check_dimensions(const ConcaveProgram& prog) const;

  static GainMatrices identity(Index n, Index m);
};

/// Raw field X(x, lambda) = (grad_x L, g(x)). Defined off the domain as well.
///
/// Sign convention: the lambda block is g(x) = -grad_lambda L, computed here once and
/// reused by every field below.
Vector field_unprojected(const ConcaveProgram& prog, const PrimalDualPoint& p);

/// Primal-dual field: x' = grad_x L, lambda' = [g(x)]_lambda^+. The mask reports the
/// multipliers held at zero. Throws DomainError outside the domain.
Projected field_primal_dual(const ConcaveProgram& prog, const PrimalDualPoint& p);

/// Gains variant: x' = K1 grad_x L, lambda' = K2 [g(x)]_lambda^+.
Vector field_with_gains(const ConcaveProgram& prog, const GainMatrices& gains,
                        const PrimalDualPoint& p);

/// Checks field_primal_dual(p) == vector_projection(p, field_unprojected(p)) bit for bit.
bool verify_projection_identity(const ConcaveProgram& prog, const PrimalDualPoint& p);

}  // namespace saddleflow
