#include "saddleflow/dynamics.hpp"

#include "saddleflow/errors.hpp"

#include <cmath>

namespace saddleflow {

namespace {

void require_domain(const PrimalDualPoint& p, const char* op) {
  if (!p.in_domain()) throw DomainError(std::string(op) + ": lambda must be >= 0");
}

}  // namespace

void GainMatrices::validate() const {
  for (Index i = 0; i < k1.size(); ++i) {
    if (!(k1(i) > 0.0) || !std::isfinite(k1(i))) {
      throw DomainError("gains: K1[" + std::to_string(i) + "] must be positive");
    }
  }
  for (Index i = 0; i < k2.size(); ++i) {
    if (!(k2(i) > 0.0) || !std::isfinite(k2(i))) {
      throw DomainError("gains: K2[" + std::to_string(i) + "] must be positive");
    }
  }
}

void GainMatrices::check_dimensions(const ConcaveProgram& prog) const {
  if (k1.size() != prog.n()) {
    throw DimensionError("gains.K1: expected length " + std::to_string(prog.n()) + ", got " +
                         std::to_string(k1.size()));
  }
  if (k2.size() != prog.m()) {
    throw DimensionError("gains.K2: expected length " + std::to_string(prog.m()) + ", got " +
                         std::to_string(k2.size()));
  }
}

GainMatrices GainMatrices::identity(Index n, Index m) {
  return {Vector::Ones(n), Vector::Ones(m)};
}

Vector field_unprojected(const ConcaveProgram& prog, const PrimalDualPoint& p) {
  Vector out(prog.n() + prog.m());
  out << grad_x_lagrangian(prog, p), prog.constraints(p.x);
  return out;
}

Projected field_primal_dual(const ConcaveProgram& prog, const PrimalDualPoint& p) {
  prog.check_point(p);
  require_domain(p, "primal-dual field");
  const Projected dual = positive_projection(Vector(prog.constraints(p.x)), p.lambda);
  Vector out(prog.n() + prog.m());
  out << grad_x_lagrangian(prog, p), dual.value;
  return {std::move(out), dual.mask};
}

Vector field_with_gains(const ConcaveProgram& prog, const GainMatrices& gains,
                        const PrimalDualPoint& p) {
  gains.validate();
  gains.check_dimensions(prog);
  Vector out = field_primal_dual(prog, p).value;
  out.head(prog.n()).array() *= gains.k1.array();
  out.tail(prog.m()).array() *= gains.k2.array();
  return out;
}

bool verify_projection_identity(const ConcaveProgram& prog, const PrimalDualPoint& p) {
  const Projected direct = field_primal_dual(prog, p);
  const Projected via_projection = vector_projection(p, field_unprojected(prog, p));
  return direct.value == via_projection.value && direct.mask == via_projection.mask;
}

}  // namespace saddleflow
