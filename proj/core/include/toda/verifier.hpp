#pragma once

#include <functional>
#include <vector>

#include "toda/classify.hpp"
#include "toda/todacurve.hpp"

namespace toda {

using RealField = std::function<double(Complex)>;

/// Five-point Laplacian estimate
/// (f(z+h) + f(z-h) + f(z+ih) + f(z-ih) - 4 f(z)) / h^2, O(h^2) for C^4
/// fields.
double laplacian_fd(const RealField& field, Complex at, double h);

/// Residuals of one identity at one point, plus the same residuals
/// re-estimated with the stencil halved (Richardson cross-check).
struct ResidualReport {
  Complex at;
  double stencil_h = 0.0;
  std::vector<double> residuals;  // n entries (Toda) or one (Pluecker at k)
  double max_abs = 0.0;
  double max_abs_half_h = 0.0;
};

/// Toda-system residuals -(1/2) lap(u_j) + e^{u_{j-1}} - 2 e^{u_j} +
/// e^{u_{j+1}} for j = 1..n with u_0 = u_{n+1} = 0, the u_j produced by the
/// continuation pipeline. `perturb` is a test hook added to every u_j.
ResidualReport toda_residual(const OdeSystem& ode, Complex at, double h,
                             double tol, double perturb = 0.0);

/// Residual of the local derived-curve identity at index k: for k < n,
/// lap(log|F_k|^2) - 4 |F_{k-1}|^2 |F_{k+1}|^2 / |F_k|^4 (the right side
/// evaluated in log space); for k = n pure harmonicity of log|F_n|^2.
ResidualReport plucker_residual(const OdeSystem& ode, int k, Complex at,
                                double h, double tol = 1e-10);

/// Cumulative normalized spherical area A(r) and first-layer mass
/// B(r) = integral of e^{u_1} over |z| <= r, by polar quadrature
/// (midpoint in radius, uniform trapezoid in angle), plus the least-squares
/// growth exponent of log A against log r over the upper half of the radii.
/// Stored values come from the once-refined grid (2x rings, 2x spokes);
/// `converged` records agreement of the two resolutions within 1e-3.
struct GrowthCurve {
  std::vector<double> radii;
  std::vector<double> A;
  std::vector<double> B;
  double fitted_order = 0.0;
  bool converged = false;
  double refinement_delta = 0.0;
};

/// radii must be positive and strictly increasing; rings, spokes >= 8.
/// Throws QuadratureOverflow if a density exponent exceeds the
/// representable range even in log space.
GrowthCurve growth_functions(const OdeSystem& ode,
                             const std::vector<double>& radii, int rings,
                             int spokes, double tol = 1e-10);

/// fitted_order <= K + slack check with per-radius B(r)/r^K ratios.
struct GrowthBoundReport {
  bool pass = false;
  double fitted_order = 0.0;
  double K = 0.0;
  double slack = 0.0;
  std::vector<double> ratios;
};

GrowthBoundReport check_growth_bound(const GrowthCurve& curve, double K,
                                     double slack = 0.2);

/// u sampled along one ray, with the diagnostic u(r) - (d/2) log r.
struct RaySamples {
  double theta = 0.0;
  bool is_stokes = false;  // false: sector bisector
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> diagnostic;
  bool pass = false;
  double diagnostic_range = 0.0;  // over the top half (Stokes rays)
};

/// Stokes-line asymptotics of the Liouville solution of P: on each of the
/// d+2 Stokes rays the diagnostic must stay within `window` over the top
/// half of the radii; on each sector bisector u must be strictly
/// decreasing there. Requires P != 0 (ZeroPolynomial) and
/// max(radii) >= 10. Rays are listed Stokes first, then bisectors, each
/// ascending in angle.
struct StokesReport {
  StokesGeometry geometry;
  std::vector<RaySamples> rays;
  double window = 2.0;
  bool pass = false;
};

StokesReport stokes_asymptotics_check(const ComplexPoly& P,
                                      const std::vector<double>& radii,
                                      double tol = 1e-10, double window = 2.0);

/// Center of rotational symmetry of the spherical derivative
/// |f'|/(1+|f|^2) of a fractional-linear map, found by a coarse grid scan
/// refined by golden-section descent on both axes. angular_variation is the
/// worst (max-min)/mean of the field over the probe circles around the
/// center; pass means < 1e-6.
struct SymmetryReport {
  Complex center;
  double angular_variation = 0.0;
  bool pass = false;
};

SymmetryReport mobius_symmetry_center(const Mobius& map);

}  // namespace toda
