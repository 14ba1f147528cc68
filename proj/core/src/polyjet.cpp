#include "toda/polyjet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace toda {

namespace {

Complex ldexp_c(Complex v, int e) {
  return {std::ldexp(v.real(), e), std::ldexp(v.imag(), e)};
}

void check_same_center(const ScaledJet& a, const ScaledJet& b) {
  if (a.center() != b.center())
    throw std::invalid_argument("jet centers differ");
}

void check_order(const ScaledJet& a, int m) {
  if (m < 0) throw std::invalid_argument("jet order must be nonnegative");
  if (a.order() < m) throw std::invalid_argument("jet order too low");
}

}  // namespace

ComplexPoly::ComplexPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

ComplexPoly ComplexPoly::constant(Complex value) {
  return ComplexPoly{{value}};
}

ComplexPoly ComplexPoly::monomial(int power, Complex lead) {
  if (power < 0) throw std::invalid_argument("monomial power must be nonnegative");
  std::vector<Complex> c(power + 1, Complex{});
  c.back() = lead;
  return ComplexPoly{std::move(c)};
}

Complex ComplexPoly::eval(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> ComplexPoly::eval_derivatives(Complex z, int m) const {
  if (m < 0) throw std::invalid_argument("derivative count must be nonnegative");
  std::vector<Complex> out(m + 1, Complex{});
  const int d = degree();
  for (int t = 0; t <= m; ++t) {
    if (coeffs_.empty() || t > d) break;
    // Horner over c_i * i*(i-1)*...*(i-t+1) z^{i-t}, i = t..d
    Complex acc{};
    for (int i = d; i >= t; --i) {
      double fall = 1.0;
      for (int s = 0; s < t; ++s) fall *= static_cast<double>(i - s);
      acc = acc * z + coeffs_[static_cast<size_t>(i)] * fall;
    }
    out[static_cast<size_t>(t)] = acc;
  }
  return out;
}

ComplexPoly ComplexPoly::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<Complex> c(coeffs_.size() + 1, Complex{});
  for (size_t i = 0; i < coeffs_.size(); ++i)
    c[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
  return ComplexPoly{std::move(c)};
}

ComplexPoly ComplexPoly::scaled(Complex factor) const {
  std::vector<Complex> c = coeffs_;
  for (auto& v : c) v *= factor;
  return ComplexPoly{std::move(c)};
}

ScaledJet::ScaledJet(std::vector<Complex> values, int scale, Complex center)
    : values_(std::move(values)), scale_(scale), center_(center) {
  if (values_.empty()) throw std::invalid_argument("jet needs at least the value entry");
}

ScaledJet ScaledJet::constant(Complex value, int order, Complex center) {
  std::vector<Complex> v(order + 1, Complex{});
  v[0] = value;
  return {std::move(v), 0, center};
}

Complex ScaledJet::true_value(int j) const {
  return ldexp_c(values_[static_cast<size_t>(j)], scale_);
}

ScaledJet jet_rescale(const ScaledJet& a) {
  double maxmag = 0.0;
  for (const auto& v : a.values()) maxmag = std::max(maxmag, std::abs(v));
  if (maxmag == 0.0) return {a.values(), 0, a.center()};
  const int shift = std::ilogb(maxmag);
  if (shift == 0) return a;
  std::vector<Complex> v = a.values();
  for (auto& x : v) x = ldexp_c(x, -shift);
  return {std::move(v), a.scale() + shift, a.center()};
}

ScaledJet jet_multiply(const ScaledJet& a, const ScaledJet& b, int m) {
  check_same_center(a, b);
  check_order(a, m);
  check_order(b, m);
  std::vector<Complex> out(m + 1, Complex{});
  std::vector<double> binom(m + 1, 0.0);  // row j of Pascal's triangle
  for (int j = 0; j <= m; ++j) {
    binom[static_cast<size_t>(j)] = 1.0;
    for (int i = j - 1; i >= 1; --i)
      binom[static_cast<size_t>(i)] += binom[static_cast<size_t>(i - 1)];
    Complex acc{};
    for (int i = 0; i <= j; ++i)
      acc += binom[static_cast<size_t>(i)] * a.values()[static_cast<size_t>(i)] *
             b.values()[static_cast<size_t>(j - i)];
    out[static_cast<size_t>(j)] = acc;
  }
  return jet_rescale({std::move(out), a.scale() + b.scale(), a.center()});
}

ScaledJet jet_divide(const ScaledJet& a, const ScaledJet& b, int m) {
  check_same_center(a, b);
  check_order(a, m);
  check_order(b, m);
  if (b.values()[0] == Complex{})
    throw DivisionByZeroJet("jet division by a jet vanishing at the center");
  std::vector<Complex> q(m + 1, Complex{});
  std::vector<double> binom(m + 1, 0.0);
  for (int j = 0; j <= m; ++j) {
    binom[static_cast<size_t>(j)] = 1.0;
    for (int i = j - 1; i >= 1; --i)
      binom[static_cast<size_t>(i)] += binom[static_cast<size_t>(i - 1)];
    Complex acc = a.values()[static_cast<size_t>(j)];
    for (int i = 0; i < j; ++i)
      acc -= binom[static_cast<size_t>(i)] * q[static_cast<size_t>(i)] *
             b.values()[static_cast<size_t>(j - i)];
    q[static_cast<size_t>(j)] = acc / b.values()[0];
  }
  return jet_rescale({std::move(q), a.scale() - b.scale(), a.center()});
}

}  // namespace toda
