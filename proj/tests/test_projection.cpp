#include "saddleflow/errors.hpp"
#include "saddleflow/projection.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace saddleflow;
using namespace saddleflow::testing;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("scalar positive projection") {
  CHECK(positive_projection(-3.0, 2.0) == -3.0);
  CHECK(positive_projection(-3.0, 0.0) == 0.0);
  CHECK(positive_projection(5.0, 0.0) == 5.0);
  CHECK_THROWS_AS((void)positive_projection(1.0, -1e-300), DomainError);
}

TEST_CASE("vector positive projection") {
  const auto r = positive_projection(vec({-1.0, 2.0}), vec({0.0, 0.0}));
  CHECK(r.value == vec({0.0, 2.0}));
  CHECK(r.mask.flags == std::vector<bool>{true, false});

  const auto interior = positive_projection(vec({-1.0, 2.0, -7.0}), vec({0.1, 3.0, 1e-9}));
  CHECK(interior.value == vec({-1.0, 2.0, -7.0}));
  CHECK_FALSE(interior.mask.any());

  const auto empty = positive_projection(Vector(0), Vector(0));
  CHECK(empty.value.size() == 0);
  CHECK(empty.mask.bits().empty());

  CHECK_THROWS_AS((void)positive_projection(vec({1.0}), vec({1.0, 2.0})), DimensionError);
  CHECK_THROWS_AS((void)positive_projection(vec({1.0}), vec({-1.0})), DomainError);
}

TEST_CASE("point projection onto R^n x R^m_+") {
  CHECK(project_onto_domain(vec({3.0, -2.0}), 1) == vec({3.0, 0.0}));
  CHECK(project_onto_domain(vec({-3.0, 2.0}), 1) == vec({-3.0, 2.0}));
  CHECK(project_onto_domain(vec({-1.0, -1.0}), 0) == vec({0.0, 0.0}));
  // clamped entries are exact +0.0
  CHECK_FALSE(std::signbit(project_onto_domain(vec({1.0, -0.0}), 1)(1)));
}

TEST_CASE("vector projection closed form") {
  const PrimalDualPoint interior{vec({0.3}), vec({0.7})};
  CHECK(vector_projection(interior, vec({4.0, -2.0})).value == vec({4.0, -2.0}));

  const PrimalDualPoint boundary{vec({0.3}), vec({0.0})};
  const auto clamped = vector_projection(boundary, vec({4.0, -2.0}));
  CHECK(clamped.value == vec({4.0, 0.0}));
  CHECK(clamped.mask.flags == std::vector<bool>{true});
  const auto inward = vector_projection(boundary, vec({4.0, 2.0}));
  CHECK(inward.value == vec({4.0, 2.0}));
  CHECK_FALSE(inward.mask.any());

  CHECK_THROWS_AS((void)vector_projection({vec({0.0}), vec({-0.1})}, vec({1.0, 1.0})), DomainError);
}

TEST_CASE("vector projection is the limit of difference quotients") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2;
    const Index m = 3;
    PrimalDualPoint p{random_vector(rng, n, -2.0, 2.0), random_vector(rng, m, 0.0, 2.0)};
    for (Index j = 0; j < m; ++j) {
      if (coin(rng) < 0.5) p.lambda(j) = 0.0;
    }
    const Vector v = random_vector(rng, n + m, -3.0, 3.0);
    const Vector expected = vector_projection(p, v).value;

    // Error shrinks at least linearly in delta (within a factor 4); for the orthant it
    // drops to roundoff once delta is below the distance to the nearest kink.
    double prev_err = -1.0;
    double prev_delta = 0.0;
    for (double delta : {1e-3, 1e-4, 1e-5}) {
      const Vector quotient = (project_onto_domain(p.stacked() + delta * v, n) - p.stacked()) / delta;
      const double err = (quotient - expected).norm();
      if (prev_err >= 0.0) CHECK(err <= 4.0 * (delta / prev_delta) * prev_err + 1e-9);
      prev_err = err;
      prev_delta = delta;
    }
    const Vector fine = (project_onto_domain(p.stacked() + 1e-7 * v, n) - p.stacked()) / 1e-7;
    CHECK((fine - expected).norm() < 1e-6);
  }
}

TEST_CASE("point projection is nonexpansive and idempotent") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Vector a = random_vector(rng, 5, -3.0, 3.0);
    const Vector b = random_vector(rng, 5, -3.0, 3.0);
    const Vector pa = project_onto_domain(a, 2);
    const Vector pb = project_onto_domain(b, 2);
    CHECK((pa - pb).norm() <= (a - b).norm() + 1e-15);
    CHECK(project_onto_domain(pa, 2) == pa);
  }
}

TEST_CASE("active-set diagnosis with tolerance") {
  const auto mask = diagnose_active_set(vec({-1.0, -1.0, 2.0, -1.0}), vec({0.0, 1e-13, 0.0, 0.5}));
  CHECK(mask.flags == std::vector<bool>{true, true, false, false});
  CHECK(mask.count() == 2);
  CHECK(ActiveMask::from_bits(mask.bits()) == mask);
  CHECK_THROWS_AS((void)ActiveMask::from_bits("10x"), ParseError);
}
