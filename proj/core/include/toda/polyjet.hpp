#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "toda/errors.hpp"

namespace toda {

using Complex = std::complex<double>;

/// Degree of the identically-zero polynomial. Deliberately not -1 or 0:
/// zero coefficients must drop out of degree maxima.
inline constexpr int kDegMinusInfinity = std::numeric_limits<int>::min();

/// Polynomial with complex coefficients stored by ascending power.
/// Canonical form: the highest stored coefficient is nonzero and the zero
/// polynomial stores nothing.
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<Complex> coeffs);

  static ComplexPoly constant(Complex value);
  /// lead * z^power
  static ComplexPoly monomial(int power, Complex lead = 1.0);

  bool is_zero() const { return coeffs_.empty(); }
  /// kDegMinusInfinity for the zero polynomial.
  int degree() const {
    return coeffs_.empty() ? kDegMinusInfinity
                           : static_cast<int>(coeffs_.size()) - 1;
  }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// Leading coefficient; 0 for the zero polynomial.
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

  Complex eval(Complex z) const;

  /// (P(z), P'(z), ..., P^(m)(z)) by Horner on falling factorials.
  /// Entries beyond the degree are exact zeros.
  std::vector<Complex> eval_derivatives(Complex z, int m) const;

  /// Antiderivative with zero constant term.
  ComplexPoly antiderivative() const;
  ComplexPoly scaled(Complex factor) const;

 private:
  std::vector<Complex> coeffs_;
};

/// Derivative values (f(z), f'(z), ..., f^(m)(z)) at a common center with
/// one shared base-2 exponent: the true j-th derivative is
/// values()[j] * 2^scale(). Rebalanced jets keep the largest mantissa
/// magnitude in [1, 2), which is what lets downstream determinants survive
/// |f| ~ exp(r^lambda).
class ScaledJet {
 public:
  ScaledJet(std::vector<Complex> values, int scale, Complex center);
  /// Jet of a constant function: (value, 0, ..., 0).
  static ScaledJet constant(Complex value, int order, Complex center);

  int order() const { return static_cast<int>(values_.size()) - 1; }
  const std::vector<Complex>& values() const { return values_; }
  int scale() const { return scale_; }
  Complex center() const { return center_; }

  /// Mantissa * 2^scale. Overflows for extreme scales; test/diagnostic use.
  Complex true_value(int j) const;

 private:
  std::vector<Complex> values_;
  int scale_ = 0;
  Complex center_{};
};

/// Same true values, mantissa max-magnitude in [1, 2); the zero jet comes
/// back with scale 0.
ScaledJet jet_rescale(const ScaledJet& a);

/// Jet of the product a*b to order m (Leibniz). Centers must agree and both
/// operands must have order >= m.
ScaledJet jet_multiply(const ScaledJet& a, const ScaledJet& b, int m);

/// Jet of the quotient a/b to order m. Throws DivisionByZeroJet when the
/// denominator mantissa vanishes at the center.
ScaledJet jet_divide(const ScaledJet& a, const ScaledJet& b, int m);

}  // namespace toda
