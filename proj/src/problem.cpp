#include "saddleflow/problem.hpp"

#include "saddleflow/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>

namespace saddleflow {

namespace {

std::string size_message(const char* field, Index expected, Index got) {
  std::ostringstream os;
  os << field << ": expected length " << expected << ", got " << got;
  return os.str();
}

double min_eigenvalue(const Matrix& M) {
  if (M.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(M, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_symmetric(const Matrix& M) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  return (M - M.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance * scale;
}

void check_square(const Matrix& M, Index n, const std::string& field) {
  if (M.rows() != n || M.cols() != n) {
    std::ostringstream os;
    os << field << ": expected " << n << "x" << n << " matrix, got " << M.rows() << "x"
       << M.cols();
    throw ValidationError(os.str());
  }
}

ConcaveProgram make_quadratic(const QuadraticProgramSpec& spec) {
  const Index n = spec.n();
  const Index m = spec.m();
  // Captured by value: the program owns its data.
  auto f = [P = spec.P, q = spec.q, c = spec.c](const Vector& x) {
    return -0.5 * x.dot(P * x) + q.dot(x) + c;
  };
  auto grad_f = [P = spec.P, q = spec.q](const Vector& x) -> Vector { return q - P * x; };
  auto g = [cons = spec.constraints, m](const Vector& x) -> Vector {
    Vector out(m);
    for (Index i = 0; i < m; ++i) {
      const auto& ci = cons[static_cast<std::size_t>(i)];
      out(i) = 0.5 * x.dot(ci.A * x) + ci.b.dot(x) + ci.d;
    }
    return out;
  };
  auto jac = [cons = spec.constraints, m, n](const Vector& x) -> Matrix {
    Matrix out(m, n);
    for (Index i = 0; i < m; ++i) {
      const auto& ci = cons[static_cast<std::size_t>(i)];
      out.row(i) = (ci.A * x + ci.b).transpose();
    }
    return out;
  };
  return ConcaveProgram(n, m, std::move(f), std::move(grad_f), std::move(g), std::move(jac));
}

}  // namespace

Vector PrimalDualPoint::stacked() const {
  Vector y(x.size() + lambda.size());
  y << x, lambda;
  return y;
}

PrimalDualPoint PrimalDualPoint::from_stacked(const Vector& y, Index n) {
  if (n < 0 || n > y.size()) throw DimensionError(size_message("stacked point", n, y.size()));
  return {y.head(n), y.tail(y.size() - n)};
}

bool PrimalDualPoint::in_domain() const {
  for (Index i = 0; i < lambda.size(); ++i) {
    if (!(lambda(i) >= 0.0)) return false;
  }
  return true;
}

bool PrimalDualPoint::operator==(const PrimalDualPoint& other) const {
  return x.size() == other.x.size() && lambda.size() == other.lambda.size() &&
         x == other.x && lambda == other.lambda;
}

double distance(const PrimalDualPoint& a, const PrimalDualPoint& b) {
  if (a.n() != b.n() || a.m() != b.m()) {
    throw DimensionError("distance: points have different shapes");
  }
  return std::sqrt((a.x - b.x).squaredNorm() + (a.lambda - b.lambda).squaredNorm());
}

ConcaveProgram::ConcaveProgram(Index n, Index m, ScalarFn objective, VectorFn objective_grad,
                               VectorFn constraints, MatrixFn constraint_jac)
    : n_(n),
      m_(m),
      objective_(std::move(objective)),
      objective_grad_(std::move(objective_grad)),
      constraints_(std::move(constraints)),
      constraint_jac_(std::move(constraint_jac)) {
  if (n_ <= 0) throw ValidationError("n: primal dimension must be positive");
  if (m_ < 0) throw ValidationError("m: constraint count must be nonnegative");
  if (!objective_ || !objective_grad_) throw ValidationError("objective: evaluator missing");
  if (m_ > 0 && (!constraints_ || !constraint_jac_)) {
    throw ValidationError("constraints: evaluator missing");
  }
}

void ConcaveProgram::check_primal(const Vector& x, const char* field) const {
  if (x.size() != n_) throw DimensionError(size_message(field, n_, x.size()));
}

void ConcaveProgram::check_point(const PrimalDualPoint& p) const {
  check_primal(p.x, "x");
  if (p.lambda.size() != m_) throw DimensionError(size_message("lambda", m_, p.lambda.size()));
}

double ConcaveProgram::objective(const Vector& x) const {
  check_primal(x);
  return objective_(x);
}

Vector ConcaveProgram::objective_grad(const Vector& x) const {
  check_primal(x);
  return objective_grad_(x);
}

Vector ConcaveProgram::constraints(const Vector& x) const {
  check_primal(x);
  if (m_ == 0) return Vector(0);
  return constraints_(x);
}

Matrix ConcaveProgram::constraint_jac(const Vector& x) const {
  check_primal(x);
  if (m_ == 0) return Matrix(0, n_);
  return constraint_jac_(x);
}

double lagrangian(const ConcaveProgram& prog, const PrimalDualPoint& p) {
  prog.check_point(p);
  return prog.objective(p.x) - p.lambda.dot(prog.constraints(p.x));
}

Vector grad_x_lagrangian(const ConcaveProgram& prog, const PrimalDualPoint& p) {
  prog.check_point(p);
  Vector grad = prog.objective_grad(p.x);
  if (prog.m() > 0) grad.noalias() -= prog.constraint_jac(p.x).transpose() * p.lambda;
  return grad;
}

Vector grad_lambda_lagrangian(const ConcaveProgram& prog, const PrimalDualPoint& p) {
  prog.check_point(p);
  return -prog.constraints(p.x);
}

void QuadraticProgramSpec::validate() const {
  const Index n = q.size();
  if (n <= 0) throw ValidationError("q: primal dimension must be positive");
  check_square(P, n, "P");
  if (!P.allFinite() || !q.allFinite() || !std::isfinite(c)) {
    throw ValidationError("objective: non-finite data");
  }
  if (!is_symmetric(P)) throw ValidationError("P: matrix is not symmetric");
  const double p_min = min_eigenvalue(P);
  if (!(p_min > kConcavityEigenvalueFloor)) {
    std::ostringstream os;
    os.precision(17);
    os << "P: not positive definite (minimum eigenvalue " << p_min << " <= "
       << kConcavityEigenvalueFloor << ")";
    throw ValidationError(os.str());
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& ci = constraints[i];
    const std::string field = "constraints[" + std::to_string(i) + "]";
    check_square(ci.A, n, field + ".A");
    if (ci.b.size() != n) throw ValidationError(size_message((field + ".b").c_str(), n, ci.b.size()));
    if (!ci.A.allFinite() || !ci.b.allFinite() || !std::isfinite(ci.d)) {
      throw ValidationError(field + ": non-finite data");
    }
    if (!is_symmetric(ci.A)) throw ValidationError(field + ".A: matrix is not symmetric");
    const double a_min = min_eigenvalue(ci.A);
    if (a_min < -kConvexityEigenvalueSlack) {
      std::ostringstream os;
      os.precision(17);
      os << field << ".A: not positive semidefinite (minimum eigenvalue " << a_min << ")";
      throw ValidationError(os.str());
    }
  }
}

bool QuadraticProgramSpec::operator==(const QuadraticProgramSpec& other) const {
  if (P.rows() != other.P.rows() || P.cols() != other.P.cols() || q.size() != other.q.size() ||
      constraints.size() != other.constraints.size()) {
    return false;
  }
  if (P != other.P || q != other.q || c != other.c) return false;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& a = constraints[i];
    const auto& b = other.constraints[i];
    if (a.A.rows() != b.A.rows() || a.A.cols() != b.A.cols() || a.b.size() != b.b.size()) {
      return false;
    }
    if (a.A != b.A || a.b != b.b || a.d != b.d) return false;
  }
  return true;
}

ConcaveProgram load_quadratic(const QuadraticProgramSpec& spec) {
  spec.validate();
  return make_quadratic(spec);
}

ConcaveProgram load_quadratic_unchecked(const QuadraticProgramSpec& spec) {
  return make_quadratic(spec);
}

QuadraticProgramSpec example1_spec() {
  QuadraticProgramSpec spec;
  spec.P = Matrix::Constant(1, 1, 2.0);
  spec.q = Vector::Constant(1, 10.0);
  spec.c = -25.0;
  spec.constraints.push_back({Matrix::Constant(1, 1, 2.0), Vector::Zero(1), -1.0});
  return spec;
}

SaddlePoint example1_saddle() { return {Vector::Constant(1, 1.0), Vector::Constant(1, 4.0)}; }

bool is_example1(const QuadraticProgramSpec& spec) { return spec == example1_spec(); }

SlaterCheck check_slater(const ConcaveProgram& prog, const std::optional<Vector>& candidate) {
  if (!candidate) {
    return {SlaterStatus::Skipped, std::numeric_limits<double>::quiet_NaN(),
            "warning: no interior candidate supplied; Slater's condition not checked"};
  }
  const Vector g = prog.constraints(*candidate);
  const double worst = g.size() == 0 ? -std::numeric_limits<double>::infinity() : g.maxCoeff();
  if (worst < 0.0) return {SlaterStatus::Satisfied, worst, "candidate is strictly feasible"};
  std::ostringstream os;
  os.precision(17);
  os << "candidate is not strictly feasible (max g = " << worst << ")";
  return {SlaterStatus::Violated, worst, os.str()};
}

}  // namespace saddleflow
