#include "saddleflow/projection.hpp"

#include "saddleflow/errors.hpp"

#include <algorithm>
#include <sstream>

namespace saddleflow {

bool ActiveMask::any() const {
  return std::find(flags.begin(), flags.end(), true) != flags.end();
}

std::size_t ActiveMask::count() const {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

std::string ActiveMask::bits() const {
  std::string s;
  s.reserve(flags.size());
  for (bool f : flags) s.push_back(f ? '1' : '0');
  return s;
}

ActiveMask ActiveMask::from_bits(std::string_view bits) {
  ActiveMask mask;
  mask.flags.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw ParseError("mask: expected a bitstring of 0/1");
    mask.flags.push_back(ch == '1');
  }
  return mask;
}

double positive_projection(double a, double b) {
  if (!(b >= 0.0)) {
    std::ostringstream os;
    os << "positive projection: bound must be >= 0, got " << b;
    throw DomainError(os.str());
  }
  if (b > 0.0) return a;
  return std::max(0.0, a);
}

Projected positive_projection(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("positive projection: a has length " + std::to_string(a.size()) +
                         " but b has length " + std::to_string(b.size()));
  }
  Projected out{Vector(a.size()), ActiveMask{std::vector<bool>(static_cast<std::size_t>(a.size()))}};
  for (Index i = 0; i < a.size(); ++i) {
    out.value(i) = positive_projection(a(i), b(i));
    out.mask.flags[static_cast<std::size_t>(i)] = out.value(i) != a(i);
  }
  return out;
}

Vector project_onto_domain(const Vector& y, Index n) {
  if (n < 0 || n > y.size()) throw DimensionError("projection: n exceeds vector length");
  Vector z = y;
  for (Index j = n; j < z.size(); ++j) {
    // Writes an exact 0.0 so downstream `b == 0` tests see the boundary.
    if (z(j) <= 0.0) z(j) = 0.0;
  }
  return z;
}

Projected vector_projection(const PrimalDualPoint& p, const Vector& v) {
  const Index n = p.n();
  const Index m = p.m();
  if (v.size() != n + m) {
    throw DimensionError("vector projection: v has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(n + m));
  }
  if (!p.in_domain()) throw DomainError("vector projection: lambda must be >= 0");
  Projected out{v, ActiveMask{std::vector<bool>(static_cast<std::size_t>(m))}};
  for (Index j = 0; j < m; ++j) {
    if (p.lambda(j) == 0.0 && v(n + j) < 0.0) {
      out.value(n + j) = 0.0;
      out.mask.flags[static_cast<std::size_t>(j)] = true;
    }
  }
  return out;
}

ActiveMask diagnose_active_set(const Vector& g, const Vector& lambda, double tol) {
  if (g.size() != lambda.size()) throw DimensionError("active set: g and lambda lengths differ");
  ActiveMask mask{std::vector<bool>(static_cast<std::size_t>(g.size()))};
  for (Index i = 0; i < g.size(); ++i) {
    mask.flags[static_cast<std::size_t>(i)] = lambda(i) <= tol && g(i) < 0.0;
  }
  return mask;
}

}  // namespace saddleflow
