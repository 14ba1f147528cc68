#include "toda/todacurve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toda {

namespace {

constexpr double kCollapseLog = -690.77552789821368;  // ln(1e-300)

Complex ldexp_c(Complex v, int e) {
  return {std::ldexp(v.real(), e), std::ldexp(v.imag(), e)};
}

// log det(M^H M) of the (n+1) x (cols) mantissa matrix whose row i is
// jets[i].values()[0..cols-1] scaled by 2^(scale_i - smax). Householder QR
// with column pivoting; the determinant is the product of the squared
// diagonal of R, accumulated in log space.
double log_gram_det(const std::vector<ScaledJet>& jets, int cols, int smax) {
  const size_t rows = jets.size();
  std::vector<std::vector<Complex>> m(rows,
                                      std::vector<Complex>(static_cast<size_t>(cols)));
  for (size_t i = 0; i < rows; ++i) {
    const int t = jets[i].scale() - smax;
    for (int j = 0; j < cols; ++j)
      m[i][static_cast<size_t>(j)] = ldexp_c(jets[i].values()[static_cast<size_t>(j)], t);
  }
  double logdet = 0.0;
  std::vector<size_t> col(static_cast<size_t>(cols));
  for (size_t j = 0; j < col.size(); ++j) col[j] = j;
  for (size_t step = 0; step < static_cast<size_t>(cols); ++step) {
    // pivot on the largest residual column norm
    size_t best = step;
    double best_norm = -1.0;
    for (size_t j = step; j < col.size(); ++j) {
      double s = 0.0;
      for (size_t i = step; i < rows; ++i) s += std::norm(m[i][col[j]]);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    std::swap(col[step], col[best]);
    const double norm = std::sqrt(best_norm);
    if (!(norm > 0.0))
      throw RamifiedPoint("derived-curve norm collapsed to zero");
    logdet += 2.0 * std::log(norm);
    if (logdet < kCollapseLog)
      throw RamifiedPoint("derived-curve norm below 1e-300 after scaling");
    // Householder vector for column col[step], rows step..
    const size_t c0 = col[step];
    Complex alpha = m[step][c0];
    const double amag = std::abs(alpha);
    const Complex phase = amag > 0.0 ? alpha / amag : Complex{1.0, 0.0};
    const Complex beta = -phase * norm;
    std::vector<Complex> v(rows, Complex{});
    v[step] = alpha - beta;
    for (size_t i = step + 1; i < rows; ++i) v[i] = m[i][c0];
    double vsq = 0.0;
    for (size_t i = step; i < rows; ++i) vsq += std::norm(v[i]);
    if (vsq > 0.0) {
      for (size_t j = step; j < col.size(); ++j) {
        const size_t c = col[j];
        Complex dot{};
        for (size_t i = step; i < rows; ++i) dot += std::conj(v[i]) * m[i][c];
        const Complex f = 2.0 * dot / vsq;
        for (size_t i = step; i < rows; ++i) m[i][c] -= f * v[i];
      }
    }
  }
  return logdet;
}

// log |det|^2 of the square jet matrix, row scales folded in exactly.
double log_square_det_sq(const std::vector<ScaledJet>& jets) {
  const size_t dim = jets.size();
  std::vector<std::vector<Complex>> v(dim, std::vector<Complex>(dim));
  double log_abs = 0.0;
  for (size_t i = 0; i < dim; ++i) {
    for (size_t j = 0; j < dim; ++j) v[i][j] = jets[i].values()[j];
    log_abs += jets[i].scale() * std::numbers::ln2;
  }
  double mant_log = 0.0;
  for (size_t c = 0; c < dim; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < dim; ++r)
      if (std::abs(v[r][c]) > std::abs(v[piv][c])) piv = r;
    if (v[piv][c] == Complex{})
      throw RamifiedPoint("derived-curve norm collapsed to zero");
    if (piv != c) std::swap(v[piv], v[c]);
    mant_log += std::log(std::abs(v[c][c]));
    for (size_t r = c + 1; r < dim; ++r) {
      const Complex f = v[r][c] / v[c][c];
      for (size_t j = c; j < dim; ++j) v[r][j] -= f * v[c][j];
    }
  }
  if (2.0 * mant_log < kCollapseLog)
    throw RamifiedPoint("derived-curve norm below 1e-300 after scaling");
  return 2.0 * (log_abs + mant_log);
}

double log1p_sq(double log_x) {
  // log(1 + x^2) given log x, overflow-safe
  if (log_x > 0.0) return 2.0 * log_x + std::log1p(std::exp(-2.0 * log_x));
  return std::log1p(std::exp(2.0 * log_x));
}

}  // namespace

DerivedNorms::DerivedNorms(Complex at, std::vector<double> values)
    : at_(at), values_(std::move(values)) {
  if (values_.size() < 3 || values_[0] != 0.0)
    throw std::invalid_argument("lognorm(-1) must exist and equal 0");
}

DerivedNorms derived_log_norms(const FundamentalBasis& basis) {
  const int n = basis.ode().rank();
  for (const auto& jet : basis.jets())
    if (jet.order() < n)
      throw std::invalid_argument("basis jets need order >= n");
  int smax = basis.jets()[0].scale();
  for (const auto& jet : basis.jets()) smax = std::max(smax, jet.scale());

  std::vector<double> values(static_cast<size_t>(n) + 2, 0.0);
  for (int k = 0; k < n; ++k)
    values[static_cast<size_t>(k) + 1] =
        log_gram_det(basis.jets(), k + 1, smax) +
        2.0 * (k + 1) * smax * std::numbers::ln2;
  if (basis.identity_initialized())
    values[static_cast<size_t>(n) + 1] =
        2.0 * wronskian_abel(basis.ode(), basis.at()).log_abs;
  else
    values[static_cast<size_t>(n) + 1] = log_square_det_sq(basis.jets());
  return {basis.at(), std::move(values)};
}

TodaPoint assemble_u(const DerivedNorms& norms) {
  const int n = norms.rank();
  TodaPoint point{norms.at(), std::vector<double>(static_cast<size_t>(n))};
  for (int k = 1; k <= n; ++k)
    point.u[static_cast<size_t>(k) - 1] = norms.lognorm(k - 2) -
                                          2.0 * norms.lognorm(k - 1) +
                                          norms.lognorm(k) + std::numbers::ln2;
  return point;
}

Complex schwarzian(const ScaledJet& f_jet) {
  if (f_jet.order() < 3)
    throw std::invalid_argument("schwarzian needs a jet of order >= 3");
  const Complex v1 = f_jet.values()[1];
  if (v1 == Complex{})
    throw CriticalPoint("schwarzian at a critical point (f' = 0)");
  const Complex r2 = f_jet.values()[2] / v1;
  const Complex r3 = f_jet.values()[3] / v1;
  return r3 - 1.5 * r2 * r2;
}

double liouville_u(const ComplexPoly& P, Complex at, double tol) {
  OdeSystem ode(1, {P.scaled(0.5), ComplexPoly{}});
  const FundamentalBasis basis = continue_basis(ode, at, 2, tol);
  const ScaledJet& w1 = basis.jets()[0];
  const ScaledJet& w2 = basis.jets()[1];
  // pick the larger solution as denominator; Eq-invariance under f -> 1/f
  const double m1 = std::abs(w1.values()[0]) * std::exp2(w1.scale() - w2.scale());
  const double m2 = std::abs(w2.values()[0]);
  const ScaledJet f = (m2 >= m1) ? jet_divide(w1, w2, 1) : jet_divide(w2, w1, 1);
  const double scale_log = f.scale() * std::numbers::ln2;
  const double log_fp = std::log(std::abs(f.values()[1])) + scale_log;
  const double log_f = std::log(std::abs(f.values()[0])) + scale_log;
  return std::numbers::ln2 + 2.0 * log_fp - 2.0 * log1p_sq(log_f);
}

Mobius::Mobius(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (a * d - b * c == Complex{})
    throw DegenerateMobius("mobius coefficients with ad - bc = 0");
}

ScaledJet mobius_apply(const Mobius& map, Complex z, int m) {
  if (m < 0) throw std::invalid_argument("jet order must be nonnegative");
  const Complex t = map.c() * z + map.d();
  if (t == Complex{}) throw PoleAt("mobius map evaluated at its pole");
  std::vector<Complex> v(static_cast<size_t>(m) + 1, Complex{});
  v[0] = (map.a() * z + map.b()) / t;
  // f^(k) = (-1)^(k-1) k! c^(k-1) (ad-bc) / t^(k+1), k >= 1
  Complex num = map.determinant();
  Complex tk = t * t;
  double fact = 1.0;
  for (int k = 1; k <= m; ++k) {
    fact *= static_cast<double>(k);
    v[static_cast<size_t>(k)] = fact * num / tk;
    num *= -map.c();
    tk *= t;
  }
  return jet_rescale({std::move(v), 0, z});
}

}  // namespace toda
