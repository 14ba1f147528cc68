#pragma once

// Shared test utilities: seeded draws and independent brute-force oracles.
// Everything here must stay independent of the implementation paths it
// checks (minor enumeration instead of Gram determinants, closed forms
// instead of continuation, and so on).

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "toda/odeflow.hpp"
#include "toda/polyjet.hpp"

namespace testutil {

using toda::Complex;

inline double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform(rng);
}

inline Complex disc(std::mt19937_64& rng, double radius = 1.0) {
  for (;;) {
    Complex z{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    if (std::abs(z) <= 1.0) return radius * z;
  }
}

/// Random polynomial, deg <= max_deg, |coefficients| <= 1, nonzero leading
/// coefficient with magnitude >= 0.2 so the drawn degree is meaningful.
inline toda::ComplexPoly random_poly(std::mt19937_64& rng, int max_deg) {
  const int deg = static_cast<int>(uniform(rng) * (max_deg + 1));
  std::vector<Complex> coeffs(static_cast<size_t>(deg) + 1);
  for (auto& c : coeffs) c = disc(rng);
  while (std::abs(coeffs.back()) < 0.2) coeffs.back() = disc(rng);
  return toda::ComplexPoly{std::move(coeffs)};
}

/// Random system, each P_k zero with probability 1/5, else random_poly.
inline toda::OdeSystem random_system(std::mt19937_64& rng, int n, int max_deg) {
  std::vector<toda::ComplexPoly> coeffs;
  coeffs.reserve(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    if (uniform(rng) < 0.2)
      coeffs.emplace_back();
    else
      coeffs.push_back(random_poly(rng, max_deg));
  }
  return {n, std::move(coeffs)};
}

inline double wrap_angle(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double y = std::fmod(x, two_pi);
  if (y > std::numbers::pi) y -= two_pi;
  if (y <= -std::numbers::pi) y += two_pi;
  return y;
}

/// u(z) of the Liouville solution of P = 0 with the canonical basis (1, z).
inline double liouville_p0_u(Complex z) {
  return std::log(2.0) - 2.0 * std::log1p(std::norm(z));
}

/// Determinant of a small complex matrix by Laplace expansion.
inline Complex det_laplace(const std::vector<std::vector<Complex>>& m) {
  const size_t n = m.size();
  if (n == 1) return m[0][0];
  Complex acc{};
  double sign = 1.0;
  for (size_t r = 0; r < n; ++r) {
    std::vector<std::vector<Complex>> sub;
    for (size_t i = 0; i < n; ++i) {
      if (i == r) continue;
      std::vector<Complex> row(m[i].begin() + 1, m[i].end());
      sub.push_back(std::move(row));
    }
    acc += sign * m[r][0] * det_laplace(sub);
    sign = -sign;
  }
  return acc;
}

/// log |F_k|^2 by brute-force enumeration of all (k+1)x(k+1) minors of the
/// (n+1)x(k+1) true-value jet matrix. Keep jet scales small: true values
/// are materialized.
inline double log_sq_norm_brute(const std::vector<toda::ScaledJet>& jets, int k) {
  const int rows = static_cast<int>(jets.size());
  std::vector<int> pick(static_cast<size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) pick[static_cast<size_t>(i)] = i;
  double sum = 0.0;
  for (;;) {
    std::vector<std::vector<Complex>> minor(static_cast<size_t>(k) + 1,
                                            std::vector<Complex>(static_cast<size_t>(k) + 1));
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b)
        minor[static_cast<size_t>(a)][static_cast<size_t>(b)] =
            jets[static_cast<size_t>(pick[static_cast<size_t>(a)])].true_value(b);
    sum += std::norm(det_laplace(minor));
    // next combination
    int i = k;
    while (i >= 0 && pick[static_cast<size_t>(i)] == rows - (k + 1) + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j <= k; ++j)
      pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }
  return std::log(sum);
}

}  // namespace testutil
