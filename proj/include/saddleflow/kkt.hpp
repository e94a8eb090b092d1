#pragma once

#include "saddleflow/problem.hpp"

namespace saddleflow {

/// Residuals of the four KKT conditions at (x, lambda).
struct KktReport {
  double stationarity = 0.0;  // ||grad f(x) - sum_i lambda_i grad g_i(x)||
  double primal_feas = 0.0;   // ||max(g(x), 0)||
  double dual_feas = 0.0;     // ||max(-lambda, 0)||
  double comp_slack = 0.0;    // |lambda^T g(x)|
  double total = 0.0;         // max of the four

  bool operator==(const KktReport&) const = default;
};

KktReport kkt_residual(const ConcaveProgram& prog, const PrimalDualPoint& p);

}  // namespace saddleflow
