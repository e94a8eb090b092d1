#include "saddleflow/kkt.hpp"

#include <algorithm>
#include <cmath>

namespace saddleflow {

KktReport kkt_residual(const ConcaveProgram& prog, const PrimalDualPoint& p) {
  prog.check_point(p);
  const Vector g = prog.constraints(p.x);
  KktReport r;
  r.stationarity = grad_x_lagrangian(prog, p).norm();
  r.primal_feas = g.cwiseMax(0.0).norm();
  r.dual_feas = (-p.lambda).cwiseMax(0.0).norm();
  r.comp_slack = std::abs(p.lambda.dot(g));
  r.total = std::max({r.stationarity, r.primal_feas, r.dual_feas, r.comp_slack});
  return r;
}

}  // namespace saddleflow
