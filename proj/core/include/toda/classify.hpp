#pragma once

#include <string>
#include <vector>

#include "toda/odeflow.hpp"

namespace toda {

/// Exact nonnegative rational, normalized to lowest terms, positive
/// denominator. Growth orders are compared exactly, never through floats.
class Rational {
 public:
  Rational() = default;
  Rational(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

 private:
  long long num_ = 0;
  long long den_ = 1;
};

/// Newton diagram of the equation: the points (k, deg P_k - k) for every
/// nonzero P_k plus (n+1, -(n+1)) for the leading term, their upper
/// envelope, and the maximal growth order lambda.
struct NewtonDiagram {
  struct Point {
    int k;
    int height;  // deg P_k - k
    friend bool operator==(const Point&, const Point&) = default;
  };
  int rank = 0;               // n
  std::vector<Point> points;  // ascending k; zero polynomials contribute none
  std::vector<Point> hull;    // upper envelope vertices, subsequence of points
  Rational order;             // 0 when all P_k = 0
};

NewtonDiagram newton_diagram(const OdeSystem& ode);

/// lambda = max over k with P_k != 0 of (n+1-k+deg P_k)/(n+1-k), exact; 0
/// for the all-zero system.
Rational order_from_diagram(const NewtonDiagram& diagram);

/// Order of the Liouville solutions induced by P: 0 when P = 0, else
/// deg(P)/2 + 1. Always an element of {0} union {1, 3/2, 2, 5/2, ...}.
Rational liouville_order(const ComplexPoly& P);

/// Stokes-ray data of w'' + (1/2)P w = 0 for P(z) = a z^d + ...: the d+2
/// directions solving Im(sqrt(a) z^(d/2+1)) = 0 on |z| = 1.
struct StokesGeometry {
  int degree = 0;                  // d
  Complex leading;                 // a
  std::vector<double> directions;  // ascending in [0, 2*pi)
  double sector_opening = 0.0;     // 2*pi/(d+2)
};

/// Throws ZeroPolynomial for P = 0 (fractional-linear case, no rays).
StokesGeometry stokes_directions(const ComplexPoly& P);

}  // namespace toda
