#pragma once

#include <vector>

#include "toda/odeflow.hpp"

namespace toda {

/// log|F_k|^2 (natural log) of the derived curves of a basis at one point,
/// for k = -1, 0, ..., n, with the convention F_0 = F, F_{-1} = 1, so
/// lognorm(-1) = 0 exactly. F_k has binom(n+1, k+1) minor components; the
/// norm comes from the Gram determinant of the jet matrix (Cauchy-Binet).
class DerivedNorms {
 public:
  DerivedNorms(Complex at, std::vector<double> values);  // values[k+1] = lognorm(k)

  Complex at() const { return at_; }
  int rank() const { return static_cast<int>(values_.size()) - 2; }
  double lognorm(int k) const { return values_[static_cast<size_t>(k + 1)]; }
  const std::vector<double>& raw() const { return values_; }

 private:
  Complex at_;
  std::vector<double> values_;
};

/// Values u_1, ..., u_n of the Toda solution at one point.
struct TodaPoint {
  Complex at;
  std::vector<double> u;  // u[j-1] = u_j
};

/// Derived-curve log-norms at the basis evaluation point. Jets need order
/// >= n. For identity-initialized bases the top norm log|F_n|^2 comes from
/// Abel's identity in closed form (the jet-matrix determinant of two
/// comparably huge solutions is pure cancellation at large radii); for
/// user-supplied bases it is evaluated from the jets. Throws RamifiedPoint
/// when a Gram determinant mantissa is <= 0 or below 1e-300 after scaling.
DerivedNorms derived_log_norms(const FundamentalBasis& basis);

/// u_k = lognorm(k-2) - 2 lognorm(k-1) + lognorm(k) + log 2, k = 1..n.
TodaPoint assemble_u(const DerivedNorms& norms);

/// Schwarzian derivative f'''/f' - (3/2)(f''/f')^2 at the jet center.
/// Requires order >= 3; throws CriticalPoint when f' = 0 there.
Complex schwarzian(const ScaledJet& f_jet);

/// u(at) of the Liouville solution induced by the polynomial P through
/// f = w_1/w_2, where (w_1, w_2) is the identity-initialized basis of
/// w'' + (1/2) P w = 0 and u = log 2|f'|^2/(1+|f|^2)^2. When w_2 is the
/// smaller solution at `at` the inverted ratio is used instead (the formula
/// is invariant under f -> 1/f), so poles of f need no special casing.
double liouville_u(const ComplexPoly& P, Complex at, double tol);

/// Fractional-linear map z -> (az+b)/(cz+d). Construction rejects
/// degenerate coefficient tuples (ad - bc = 0).
class Mobius {
 public:
  Mobius(Complex a, Complex b, Complex c, Complex d);
  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }

 private:
  Complex a_, b_, c_, d_;
};

/// Jet of the map at z to order m; throws PoleAt when cz + d = 0.
ScaledJet mobius_apply(const Mobius& map, Complex z, int m);

}  // namespace toda
