#include "saddleflow/errors.hpp"
#include "saddleflow/problem.hpp"
#include "saddleflow/problem_io.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace saddleflow;
using namespace saddleflow::testing;

namespace {

PrimalDualPoint pt(double x, double lambda) {
  return {Vector::Constant(1, x), Vector::Constant(1, lambda)};
}

}  // namespace

TEST_CASE("lagrangian on the scalar example") {
  const auto prog = load_quadratic(example1_spec());
  CHECK(lagrangian(prog, pt(1.0, 4.0)) == doctest::Approx(-16.0));
  CHECK(lagrangian(prog, pt(0.0, 0.0)) == doctest::Approx(-25.0));
}

TEST_CASE("lagrangian without constraints is the objective") {
  QuadraticProgramSpec spec;
  spec.P = Matrix::Identity(3, 3);
  spec.q = Vector::Zero(3);
  const auto prog = load_quadratic(spec);
  Vector x(3);
  x << 1.0, -2.0, 2.0;
  CHECK(prog.m() == 0);
  CHECK(lagrangian(prog, {x, Vector(0)}) == doctest::Approx(-4.5));  // -1/2 ||x||^2
  CHECK(grad_x_lagrangian(prog, {x, Vector(0)}).isApprox(-x));
}

TEST_CASE("Lagrangian gradients on the scalar example") {
  const auto prog = load_quadratic(example1_spec());
  CHECK(grad_x_lagrangian(prog, pt(1.0, 4.0))(0) == doctest::Approx(0.0));
  CHECK(grad_x_lagrangian(prog, pt(0.0, 0.0))(0) == doctest::Approx(10.0));
  // zero multiplier leaves grad f
  CHECK(grad_x_lagrangian(prog, pt(3.0, 0.0))(0) == doctest::Approx(4.0));

  CHECK(grad_lambda_lagrangian(prog, pt(1.0, 0.3))(0) == doctest::Approx(0.0));
  CHECK(grad_lambda_lagrangian(prog, pt(0.0, 0.3))(0) == doctest::Approx(1.0));
  CHECK(grad_lambda_lagrangian(prog, pt(2.0, 0.3))(0) == doctest::Approx(-3.0));
}

TEST_CASE("dimension mismatch names the offending field") {
  const auto prog = load_quadratic(example1_spec());
  PrimalDualPoint bad_lambda{Vector::Zero(1), Vector::Zero(2)};
  PrimalDualPoint bad_x{Vector::Zero(3), Vector::Zero(1)};
  try {
    (void)lagrangian(prog, bad_lambda);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    CHECK(std::string(e.what()).find("lambda") != std::string::npos);
  }
  try {
    (void)grad_x_lagrangian(prog, bad_x);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    CHECK(std::string(e.what()).rfind("x:", 0) == 0);
  }
  CHECK_THROWS_AS((void)grad_lambda_lagrangian(prog, bad_lambda), DimensionError);
}

TEST_CASE("load_quadratic evaluators match the closed forms") {
  const auto prog = load_quadratic(example1_spec());
  CHECK(prog.objective(Vector::Constant(1, 5.0)) == doctest::Approx(0.0));
  CHECK(prog.constraints(Vector::Constant(1, 1.0))(0) == doctest::Approx(0.0));

  std::mt19937_64 rng(7);
  for (const auto& problem : analytic_problems()) {
    const auto p = load_quadratic(problem.spec);
    for (int k = 0; k < 20; ++k) {
      const Vector x = random_vector(rng, problem.spec.n(), -4.0, 4.0);
      CHECK(p.objective(x) == doctest::Approx(quad_objective(problem.spec, x)));
      for (std::size_t i = 0; i < problem.spec.constraints.size(); ++i) {
        CHECK(p.constraints(x)(static_cast<Index>(i)) ==
              doctest::Approx(quad_constraint(problem.spec, i, x)));
      }
    }
  }
}

TEST_CASE("validation rejects non-PD P and non-PSD A") {
  auto spec = example1_spec();
  spec.P(0, 0) = 0.0;
  try {
    (void)load_quadratic(spec);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("minimum eigenvalue 0") != std::string::npos);
  }

  auto spec2 = example1_spec();
  spec2.constraints[0].A(0, 0) = -1.0;
  CHECK_THROWS_AS((void)load_quadratic(spec2), ValidationError);

  auto spec3 = halfspace().spec;
  spec3.P(0, 1) = 0.5;  // asymmetric
  CHECK_THROWS_AS((void)load_quadratic(spec3), ValidationError);

  // The unchecked loader is for negative controls and accepts anything well shaped.
  auto negated = example1_spec();
  negated.P = -negated.P;
  CHECK_NOTHROW((void)load_quadratic_unchecked(negated));
}

TEST_CASE("sampled concavity, convexity and gradient consistency") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> theta_dist(0.05, 0.95);
  for (const auto& problem : analytic_problems()) {
    CAPTURE(problem.name);
    const auto prog = load_quadratic(problem.spec);
    const Index n = prog.n();
    for (int k = 0; k < 100; ++k) {
      const Vector x = random_vector(rng, n, -5.0, 5.0);
      const Vector y = random_vector(rng, n, -5.0, 5.0);
      const double th = theta_dist(rng);
      const Vector mid = th * x + (1.0 - th) * y;
      CHECK(prog.objective(mid) > th * prog.objective(x) + (1.0 - th) * prog.objective(y));
      for (Index i = 0; i < prog.m(); ++i) {
        CHECK(prog.constraints(mid)(i) <=
              th * prog.constraints(x)(i) + (1.0 - th) * prog.constraints(y)(i) + 1e-12);
      }

      const Vector grad = prog.objective_grad(x);
      const Matrix jac = prog.constraint_jac(x);
      for (Index j = 0; j < n; ++j) {
        const double fd = central_difference([&](const Vector& z) { return prog.objective(z); }, x, j);
        CHECK(close_rel(fd, grad(j), 1e-5));
        for (Index i = 0; i < prog.m(); ++i) {
          const double fd_g =
              central_difference([&](const Vector& z) { return prog.constraints(z)(i); }, x, j);
          CHECK(close_rel(fd_g, jac(i, j), 1e-5));
        }
      }
    }
  }
}

TEST_CASE("Lagrangian gradients match finite differences") {
  std::mt19937_64 rng(13);
  for (const auto& problem : analytic_problems()) {
    const auto prog = load_quadratic(problem.spec);
    for (int k = 0; k < 50; ++k) {
      const PrimalDualPoint p{random_vector(rng, prog.n(), -3.0, 3.0),
                              random_vector(rng, prog.m(), 0.0, 5.0)};
      const Vector gx = grad_x_lagrangian(prog, p);
      const Vector gl = grad_lambda_lagrangian(prog, p);
      for (Index j = 0; j < prog.n(); ++j) {
        const double fd = central_difference(
            [&](const Vector& z) { return lagrangian(prog, {z, p.lambda}); }, p.x, j);
        CHECK(close_rel(fd, gx(j), 1e-5));
      }
      for (Index i = 0; i < prog.m(); ++i) {
        const double fd = central_difference(
            [&](const Vector& z) { return lagrangian(prog, {p.x, z}); }, p.lambda, i);
        CHECK(close_rel(fd, gl(i), 1e-5));
      }
      // independent of lambda
      CHECK(grad_lambda_lagrangian(prog, {p.x, 2.0 * p.lambda}) == gl);
    }
  }
}

TEST_CASE("hand-derived optimizers agree with a brute-force grid search") {
  for (const auto& problem : analytic_problems()) {
    CAPTURE(problem.name);
    const Vector x = grid_maximizer(problem.spec, -3.0, 3.0, 600);
    CHECK((x - problem.saddle.x_star).norm() < 2e-2);
  }
}

TEST_CASE("saddle inequalities at the analytic optimizers") {
  std::mt19937_64 rng(17);
  for (const auto& problem : analytic_problems()) {
    CAPTURE(problem.name);
    const auto prog = load_quadratic(problem.spec);
    const auto& s = problem.saddle;
    const double l_star = lagrangian(prog, s.point());
    for (int k = 0; k < 200; ++k) {
      const Vector x = random_vector(rng, prog.n(), -6.0, 6.0);
      const Vector l = random_vector(rng, prog.m(), 0.0, 8.0);
      CHECK(lagrangian(prog, {x, s.lambda_star}) <= l_star + 1e-9);
      CHECK(lagrangian(prog, {s.x_star, l}) >= l_star - 1e-9);
    }
  }
}

TEST_CASE("Slater check") {
  const auto prog = load_quadratic(example1_spec());
  CHECK(check_slater(prog, Vector::Constant(1, 0.0)).status == SlaterStatus::Satisfied);
  CHECK(check_slater(prog, Vector::Constant(1, 2.0)).status == SlaterStatus::Violated);
  const auto skipped = check_slater(prog, std::nullopt);
  CHECK(skipped.status == SlaterStatus::Skipped);
  CHECK(skipped.message.find("warning") != std::string::npos);
}

TEST_CASE("problem file parsing") {
  const auto file = read_problem_file(std::filesystem::path(SADDLEFLOW_DATA_DIR) / "example1.json");
  CHECK(is_example1(file.spec));
  REQUIRE(file.saddle);
  CHECK(file.saddle->x_star(0) == 1.0);
  CHECK(file.saddle->lambda_star(0) == 4.0);

  for (const auto& problem : analytic_problems()) {
    ProblemFile f{problem.spec, problem.saddle, std::nullopt};
    const auto back = parse_problem(write_problem(f));
    CHECK(back.spec == problem.spec);
    CHECK(back.saddle->point() == problem.saddle.point());
  }

  const auto box = read_problem_file(std::filesystem::path(SADDLEFLOW_DATA_DIR) / "qp_box_disk.json");
  CHECK(box.spec == box_disk().spec);
  const auto half = read_problem_file(std::filesystem::path(SADDLEFLOW_DATA_DIR) / "qp_halfspace.json");
  CHECK(half.spec == halfspace().spec);
}

TEST_CASE("problem file errors carry context") {
  try {
    (void)parse_problem("{\n  \"n\": 1,\n  \"m\": 1,\n  \"P\": [2,,]\n}", "bad.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bad.json:4:") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS((void)parse_problem(R"({"n":1,"m":1,"P":[2],"q":[10],"c":-25,"constraints":[]})"),
                       doctest::Contains("constraints"), ParseError);
  CHECK_THROWS_WITH_AS((void)parse_problem(R"({"n":2,"m":0,"P":[1,0,0],"q":[0,0],"c":0,"constraints":[]})"),
                       doctest::Contains("P"), ParseError);
  CHECK_THROWS_AS((void)read_problem_file("/nonexistent/problem.json"), ParseError);
}
