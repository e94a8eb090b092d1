#pragma once

#include "saddleflow/problem.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace saddleflow {

/// Multiplier tolerance used only when diagnosing states that did not come from the
/// integrator. Projected states carry exact zeros, so the projections themselves
/// compare against 0 exactly.
inline constexpr double kLambdaTolerance = 1e-12;

/// flags[i] is true iff the positive projection clamps component i.
struct ActiveMask {
  std::vector<bool> flags;

  bool any() const;
  std::size_t count() const;
  /// "1"/"0" per component; empty for m = 0.
  std::string bits() const;
  static ActiveMask from_bits(std::string_view bits);

  bool operator==(const ActiveMask&) const = default;
};

struct Projected {
  Vector value;
  ActiveMask mask;
};

/// [a]_b^+ : a if b > 0, max(0, a) if b == 0. Throws DomainError for b < 0 or NaN b.
double positive_projection(double a, double b);

/// Componentwise [a]_b^+ with the clamped components recorded.
Projected positive_projection(const Vector& a, const Vector& b);

/// Nearest point of R^n x R^m_{>=0}: the last y.size() - n entries are clamped at 0.
Vector project_onto_domain(const Vector& y, Index n);

/// Vector projection of v at p with respect to R^n x R^m_{>=0}: the lambda-components of
/// v that point out of the orthant at an active bound (lambda_j = 0 and v_j < 0) are
/// zeroed. Throws DomainError when p is outside the domain.
Projected vector_projection(const PrimalDualPoint& p, const Vector& v);

/// Active set of the multiplier dynamics at a state of unknown provenance:
/// flag i iff lambda_i <= tol and g_i < 0.
ActiveMask diagnose_active_set(const Vector& g, const Vector& lambda,
                               double tol = kLambdaTolerance);

}  // namespace saddleflow
