#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace saddleflow {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// A point (x, lambda) of R^n x R^m. Operations that require lambda >= 0 check it.
struct PrimalDualPoint {
  Vector x;
  Vector lambda;

  Index n() const { return x.size(); }
  Index m() const { return lambda.size(); }

  /// (x, lambda) stacked into a single vector of length n + m.
  Vector stacked() const;
  static PrimalDualPoint from_stacked(const Vector& y, Index n);

  /// True iff every multiplier is >= 0 (and not NaN).
  bool in_domain() const;

  bool operator==(const PrimalDualPoint& other) const;
};

/// Euclidean distance between two points of the same shape.
double distance(const PrimalDualPoint& a, const PrimalDualPoint& b);

/// Reference primal-dual optimizer (x*, lambda*).
struct SaddlePoint {
  Vector x_star;
  Vector lambda_star;

  PrimalDualPoint point() const { return {x_star, lambda_star}; }
};

/// Concave program: maximize f(x) subject to g(x) <= 0, with f strictly concave and
/// each g_i convex. Evaluators are immutable once constructed, so a program can be
/// shared between concurrent integrations.
class ConcaveProgram {
 public:
  using ScalarFn = std::function<double(const Vector&)>;
  using VectorFn = std::function<Vector(const Vector&)>;
  using MatrixFn = std::function<Matrix(const Vector&)>;

  ConcaveProgram(Index n, Index m, ScalarFn objective, VectorFn objective_grad,
                 VectorFn constraints, MatrixFn constraint_jac);

  Index n() const { return n_; }
  Index m() const { return m_; }

  double objective(const Vector& x) const;
  Vector objective_grad(const Vector& x) const;
  /// g(x), length m.
  Vector constraints(const Vector& x) const;
  /// Rows are grad g_i(x)^T, shape m x n.
  Matrix constraint_jac(const Vector& x) const;

  /// Throws DimensionError naming `field` when x or lambda has the wrong length.
  void check_point(const PrimalDualPoint& p) const;
  void check_primal(const Vector& x, const char* field = "x") const;

 private:
  Index n_;
  Index m_;
  ScalarFn objective_;
  VectorFn objective_grad_;
  VectorFn constraints_;
  MatrixFn constraint_jac_;
};

/// L(x, lambda) = f(x) - lambda^T g(x).
double lagrangian(const ConcaveProgram& prog, const PrimalDualPoint& p);

/// grad_x L = grad f(x) - sum_i lambda_i grad g_i(x).
Vector grad_x_lagrangian(const ConcaveProgram& prog, const PrimalDualPoint& p);

/// grad_lambda L = -g(x). Independent of lambda.
Vector grad_lambda_lagrangian(const ConcaveProgram& prog, const PrimalDualPoint& p);

struct QuadraticConstraint {
  Matrix A;  // n x n, symmetric PSD
  Vector b;
  double d = 0.0;
};

/// f(x) = -1/2 x^T P x + q^T x + c,  g_i(x) = 1/2 x^T A_i x + b_i^T x + d_i.
struct QuadraticProgramSpec {
  Matrix P;
  Vector q;
  double c = 0.0;
  std::vector<QuadraticConstraint> constraints;

  Index n() const { return q.size(); }
  Index m() const { return static_cast<Index>(constraints.size()); }

  /// Shape, symmetry and definiteness checks. Throws ValidationError.
  void validate() const;

  bool operator==(const QuadraticProgramSpec& other) const;
};

/// Minimum eigenvalue of P must exceed this for strict concavity of f.
inline constexpr double kConcavityEigenvalueFloor = 1e-9;
/// Minimum eigenvalue of each A_i must be at least -this.
inline constexpr double kConvexityEigenvalueSlack = 1e-9;
/// Symmetry tolerance, relative to the largest matrix entry.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Validated quadratic program.
ConcaveProgram load_quadratic(const QuadraticProgramSpec& spec);

/// Same evaluators without validation. Only for negative-control fixtures.
ConcaveProgram load_quadratic_unchecked(const QuadraticProgramSpec& spec);

/// maximize -(x-5)^2 subject to x^2 - 1 <= 0; its unique saddle point is (1, 4).
QuadraticProgramSpec example1_spec();
SaddlePoint example1_saddle();
bool is_example1(const QuadraticProgramSpec& spec);

enum class SlaterStatus { Satisfied, Violated, Skipped };

struct SlaterCheck {
  SlaterStatus status;
  double max_constraint;  // max_i g_i(candidate), NaN when skipped
  std::string message;
};

/// Checks g(candidate) < 0 componentwise. Without a candidate the check is skipped
/// and the result carries a warning message.
SlaterCheck check_slater(const ConcaveProgram& prog, const std::optional<Vector>& candidate);

}  // namespace saddleflow
