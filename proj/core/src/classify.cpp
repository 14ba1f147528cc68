#include "toda/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace toda {

namespace {

// cross product (b - a) x (c - a); > 0 means c lies left of a->b
long long cross(const NewtonDiagram::Point& a, const NewtonDiagram::Point& b,
                const NewtonDiagram::Point& c) {
  return static_cast<long long>(b.k - a.k) * (c.height - a.height) -
         static_cast<long long>(b.height - a.height) * (c.k - a.k);
}

}  // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

NewtonDiagram newton_diagram(const OdeSystem& ode) {
  const int n = ode.rank();
  NewtonDiagram diagram;
  diagram.rank = n;
  for (int k = 0; k <= n; ++k) {
    const ComplexPoly& pk = ode.coefficient(k);
    if (!pk.is_zero()) diagram.points.push_back({k, pk.degree() - k});
  }
  diagram.points.push_back({n + 1, -(n + 1)});  // deg P_{n+1} = 0

  // upper envelope, "visible from above": monotone chain dropping
  // collinear interior points
  for (const auto& p : diagram.points) {
    auto& hull = diagram.hull;
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0)
      hull.pop_back();
    hull.push_back(p);
  }

  diagram.order = order_from_diagram(diagram);
  return diagram;
}

Rational order_from_diagram(const NewtonDiagram& diagram) {
  const int n = diagram.rank;
  Rational best(0, 1);
  for (const auto& p : diagram.points) {
    if (p.k > n) continue;  // leading term carries no coefficient degree
    const int deg = p.height + p.k;
    const Rational candidate(n + 1 - p.k + deg, n + 1 - p.k);
    if (best < candidate) best = candidate;
  }
  return best;
}

Rational liouville_order(const ComplexPoly& P) {
  if (P.is_zero()) return {0, 1};
  return {P.degree() + 2, 2};
}

StokesGeometry stokes_directions(const ComplexPoly& P) {
  if (P.is_zero())
    throw ZeroPolynomial("Stokes geometry undefined for P = 0");
  StokesGeometry geometry;
  geometry.degree = P.degree();
  geometry.leading = P.leading();
  const int rays = geometry.degree + 2;
  geometry.sector_opening = 2.0 * std::numbers::pi / rays;
  const double arg_a = std::arg(geometry.leading);  // in (-pi, pi]
  geometry.directions.reserve(static_cast<size_t>(rays));
  for (int j = 0; j < rays; ++j) {
    double theta = (2.0 * std::numbers::pi * j - arg_a) / rays;
    theta = std::fmod(theta, 2.0 * std::numbers::pi);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    geometry.directions.push_back(theta);
  }
  std::sort(geometry.directions.begin(), geometry.directions.end());
  return geometry;
}

}  // namespace toda
