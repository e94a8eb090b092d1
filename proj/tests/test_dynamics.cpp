#include "saddleflow/dynamics.hpp"
#include "saddleflow/errors.hpp"
#include "saddleflow/kkt.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace saddleflow;
using namespace saddleflow::testing;

namespace {

PrimalDualPoint pt(double x, double lambda) {
  return {Vector::Constant(1, x), Vector::Constant(1, lambda)};
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("unprojected field on the scalar example") {
  const auto prog = load_quadratic(example1_spec());
  CHECK(field_unprojected(prog, pt(1.0, 4.0)).isZero(0.0));
  CHECK(field_unprojected(prog, pt(0.0, 0.0)) == vec2(10.0, -1.0));
  // defined off the domain as well
  CHECK(field_unprojected(prog, pt(1.0, -1.0)) == vec2(10.0, 0.0));

  QuadraticProgramSpec free_spec;
  free_spec.P = Matrix::Identity(2, 2);
  free_spec.q = vec2(1.0, 2.0);
  const auto free_prog = load_quadratic(free_spec);
  const PrimalDualPoint p{Vector::Zero(2), Vector(0)};
  CHECK(field_unprojected(free_prog, p) == vec2(1.0, 2.0));
}

TEST_CASE("primal-dual field on the scalar example") {
  const auto prog = load_quadratic(example1_spec());
  const auto at_origin = field_primal_dual(prog, pt(0.0, 0.0));
  CHECK(at_origin.value == vec2(10.0, 0.0));
  CHECK(at_origin.mask.flags == std::vector<bool>{true});

  const auto at_saddle = field_primal_dual(prog, pt(1.0, 4.0));
  CHECK(at_saddle.value.isZero(0.0));
  CHECK_FALSE(at_saddle.mask.any());

  const auto interior = field_primal_dual(prog, pt(0.3, 0.2));
  CHECK(interior.value == field_unprojected(prog, pt(0.3, 0.2)));

  CHECK_THROWS_AS((void)field_primal_dual(prog, pt(0.0, -0.5)), DomainError);
}

TEST_CASE("gains field") {
  const auto prog = load_quadratic(example1_spec());
  const GainMatrices unit = GainMatrices::identity(1, 1);
  for (const auto& p : {pt(0.0, 0.0), pt(0.4, 2.0), pt(3.0, 0.0)}) {
    CHECK(field_with_gains(prog, unit, p) == field_primal_dual(prog, p).value);
  }
  const GainMatrices g{Vector::Constant(1, 2.0), Vector::Constant(1, 3.0)};
  CHECK(field_with_gains(prog, g, pt(0.0, 0.0)) == vec2(20.0, 0.0));
  CHECK(field_with_gains(prog, g, pt(1.0, 4.0)).isZero(0.0));

  const GainMatrices bad{Vector::Constant(1, 0.0), Vector::Constant(1, 1.0)};
  CHECK_THROWS_AS((void)field_with_gains(prog, bad, pt(0.0, 0.0)), DomainError);
  const GainMatrices wrong_size{Vector::Constant(2, 1.0), Vector::Constant(1, 1.0)};
  CHECK_THROWS_AS((void)field_with_gains(prog, wrong_size, pt(0.0, 0.0)), DimensionError);
}

TEST_CASE("projected-field identity: worked cases") {
  const auto prog = load_quadratic(example1_spec());
  CHECK(verify_projection_identity(prog, pt(0.0, 0.0)));
  CHECK(verify_projection_identity(prog, pt(0.4, 1.3)));
  CHECK(verify_projection_identity(prog, pt(2.0, 0.0)));  // g > 0 on the boundary: no clamp
  CHECK(verify_projection_identity(prog, pt(1.0, 0.0)));  // g == 0 on the boundary
}

TEST_CASE("projected-field identity on 10^4 mixed samples") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (const auto& problem : analytic_problems()) {
    CAPTURE(problem.name);
    const auto prog = load_quadratic(problem.spec);
    std::size_t boundary = 0;
    std::size_t pos_g = 0;
    std::size_t neg_g = 0;
    for (int k = 0; k < 10000; ++k) {
      PrimalDualPoint p{random_vector(rng, prog.n(), -4.0, 4.0), random_vector(rng, prog.m(), 0.0, 6.0)};
      bool on_boundary = false;
      for (Index i = 0; i < prog.m(); ++i) {
        if (coin(rng) < 0.4) {
          p.lambda(i) = 0.0;
          on_boundary = true;
        }
      }
      boundary += on_boundary;
      const Vector g = prog.constraints(p.x);
      pos_g += (g.array() > 0.0).any();
      neg_g += (g.array() < 0.0).any();
      REQUIRE(verify_projection_identity(prog, p));
    }
    CHECK(boundary > 3000);
    CHECK(pos_g > 100);
    CHECK(neg_g > 100);
  }
}

TEST_CASE("equilibria coincide with KKT points") {
  std::mt19937_64 rng(29);
  for (const auto& problem : analytic_problems()) {
    CAPTURE(problem.name);
    const auto prog = load_quadratic(problem.spec);
    const auto star = problem.saddle.point();
    CHECK(kkt_residual(prog, star).total <= 1e-9);
    CHECK(field_primal_dual(prog, star).value.norm() <= 1e-9);

    const GainMatrices gains{random_vector(rng, prog.n(), 0.5, 3.0), random_vector(rng, prog.m(), 0.5, 3.0)};
    CHECK(field_with_gains(prog, gains, star).norm() <= 1e-9);

    for (int k = 0; k < 1000; ++k) {
      const PrimalDualPoint p{random_vector(rng, prog.n(), -4.0, 4.0),
                              random_vector(rng, prog.m(), 0.0, 6.0)};
      const bool kkt_zero = kkt_residual(prog, p).total <= 1e-9;
      const bool field_zero = field_primal_dual(prog, p).value.norm() <= 1e-9;
      CHECK(kkt_zero == field_zero);
      CHECK((field_with_gains(prog, gains, p).norm() <= 1e-9) == field_zero);
    }
  }
}
