#pragma once

#include <stdexcept>
#include <string>

namespace toda {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Jet division attempted at a point where the denominator vanishes,
/// i.e. the ratio has a pole there; the caller must move the sample point.
class DivisionByZeroJet : public Error {
 public:
  using Error::Error;
};

/// Continuation step size fell below the hard floor, which signals
/// pathological coefficient magnitudes.
class StepUnderflow : public Error {
 public:
  using Error::Error;
};

/// Local series truncation never met the requested tolerance within the
/// order cap and the halving budget.
class ToleranceUnachievable : public Error {
 public:
  using Error::Error;
};

/// A derived-curve norm collapsed to zero: the curve is ramified at the
/// sample point (only possible for user-supplied bases) or the scaled
/// determinant broke down numerically.
class RamifiedPoint : public Error {
 public:
  using Error::Error;
};

/// Schwarzian derivative requested where f' = 0.
class CriticalPoint : public Error {
 public:
  using Error::Error;
};

/// Moebius map evaluated at its pole cz + d = 0.
class PoleAt : public Error {
 public:
  using Error::Error;
};

/// Moebius coefficients with ad - bc = 0.
class DegenerateMobius : public Error {
 public:
  using Error::Error;
};

/// A quadrature density exponent left the representable range.
class QuadratureOverflow : public Error {
 public:
  using Error::Error;
};

/// Stokes geometry requested for the zero polynomial (fractional-linear
/// case, no Stokes structure).
class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

}  // namespace toda
