#pragma once

#include <span>
#include <vector>

#include "toda/polyjet.hpp"

namespace toda {

/// Linear ODE  w^(n+1) + P_n w^(n) + ... + P_0 w = 0  with polynomial
/// coefficients. n is the Toda rank; the equation order is n+1. Solutions
/// are entire, so analytic continuation is path-free.
class OdeSystem {
 public:
  /// coefficients = (P_0, ..., P_n); must have exactly n+1 entries, n >= 1.
  OdeSystem(int n, std::vector<ComplexPoly> coefficients);

  int rank() const { return n_; }
  int equation_order() const { return n_ + 1; }
  const ComplexPoly& coefficient(int k) const {
    return coefficients_[static_cast<size_t>(k)];
  }
  const std::vector<ComplexPoly>& coefficients() const { return coefficients_; }
  bool all_zero() const;

 private:
  int n_;
  std::vector<ComplexPoly> coefficients_;
};

/// Jets of the n+1 solutions f_0, ..., f_n at one evaluation point. A basis
/// produced by continue_basis carries identity initial data at the
/// basepoint, f_j^(i)(basepoint) = delta_ij, so its Wronskian there is 1
/// and Abel's identity pins the Wronskian everywhere else. Bases built from
/// user jets make no such promise.
class FundamentalBasis {
 public:
  /// Wrap externally produced jets (no identity-initialization guarantee).
  static FundamentalBasis from_jets(OdeSystem ode, Complex basepoint,
                                    std::vector<ScaledJet> jets);

  const OdeSystem& ode() const { return ode_; }
  Complex basepoint() const { return basepoint_; }
  Complex at() const { return jets_[0].center(); }
  const std::vector<ScaledJet>& jets() const { return jets_; }
  bool identity_initialized() const { return identity_initialized_; }

 private:
  friend class BasisWalker;
  FundamentalBasis(OdeSystem ode, Complex basepoint, std::vector<ScaledJet> jets,
                   bool identity_initialized);

  OdeSystem ode_;
  Complex basepoint_;
  std::vector<ScaledJet> jets_;
  bool identity_initialized_;
};

/// A point of a log-scaled complex value: value = exp(log_abs + i*arg).
struct LogComplex {
  double log_abs = 0.0;
  double arg = 0.0;
};

/// First M Taylor coefficients c_0..c_{M-1} about z0 of the solution with
/// derivative data init (init[i] = w^(i)(z0), so c_i = init[i]/i! for
/// i <= n); the rest come from the recurrence of the equation with each
/// P_k expanded about z0. Requires M > n+1 and init.size() == n+1.
std::vector<Complex> taylor_coefficients(const OdeSystem& ode, Complex z0,
                                         std::span<const Complex> init, int M);

/// Deterministic step heuristic at `at`: h = min(1, 1/(1+rho)) with
/// rho = max_k |P_k(at)|^{1/(n+1-k)}, halved until the local series tail
/// estimate (identity initial data) drops below tol * h.
double step_size(const OdeSystem& ode, Complex at, double tol);

/// Incremental analytic continuation of the identity-initialized basis.
/// Starts at the basepoint; advance_to() continues all solutions along the
/// straight segment to the new position (any polyline is legitimate since
/// solutions are entire). Jets carry derivatives 0..m.
class BasisWalker {
 public:
  /// Requires m >= n+1 and tol in (0, 1e-3].
  BasisWalker(OdeSystem ode, int m, double tol, Complex basepoint = {});

  void advance_to(Complex target);
  Complex position() const { return position_; }

  /// Basis jets of order m at the current position.
  FundamentalBasis basis() const;

 private:
  struct Solution {
    std::vector<Complex> derivs;  // mantissas of w, w', ..., w^(n)
    int scale = 0;
  };

  void step_once(Complex target);

  OdeSystem ode_;
  int m_;
  double tol_;
  Complex basepoint_;
  Complex position_;
  std::vector<Solution> solutions_;
};

/// Identity-initialized basis continued from basepoint 0 to `target` along
/// the straight segment, jets of order m (m >= n+1), tolerance tol per unit
/// step length, tol in (0, 1e-3]. Throws StepUnderflow /
/// ToleranceUnachievable on pathological coefficient magnitudes.
FundamentalBasis continue_basis(const OdeSystem& ode, Complex target, int m,
                                double tol);

/// log|W(target)| and arg W(target) predicted by Abel's identity
/// W(z) = W(0) exp(-int_0^z P_n) with W(0) = 1 and the integral in closed
/// form. The phase is unwrapped (raw -Im of the antiderivative).
LogComplex wronskian_abel(const OdeSystem& ode, Complex target);

/// Wronskian determinant evaluated from the basis jets, as a log-scaled
/// value (LU with partial pivoting on mantissas; row scales enter exactly).
/// arg is wrapped to (-pi, pi].
LogComplex wronskian_log(const FundamentalBasis& basis);

}  // namespace toda
