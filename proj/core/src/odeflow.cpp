#include "toda/odeflow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toda {

namespace {

constexpr int kSeriesCap = 256;     // coefficients per local series
constexpr int kMaxHalvings = 40;
constexpr double kStepFloor = 1e-12;

// The recurrence couples c_{j+n+1} to the n+deg+1 coefficients below it, so
// a tail window narrower than that gap could mistake a structural zero run
// for convergence.
int tail_window(const OdeSystem& ode) {
  int max_deg = 0;
  for (const auto& p : ode.coefficients())
    if (!p.is_zero()) max_deg = std::max(max_deg, p.degree());
  return std::max(6, ode.rank() + max_deg + 2);
}

Complex ldexp_c(Complex v, int e) {
  return {std::ldexp(v.real(), e), std::ldexp(v.imag(), e)};
}

// (m+1)(m+2)...(m+t)
double rising(int m, int t) {
  double r = 1.0;
  for (int s = 1; s <= t; ++s) r *= static_cast<double>(m + s);
  return r;
}

// Taylor expansions p[k][i] = P_k^(i)(z0) / i! of every coefficient about z0.
std::vector<std::vector<Complex>> expand_coefficients(const OdeSystem& ode,
                                                      Complex z0) {
  std::vector<std::vector<Complex>> p(ode.coefficients().size());
  for (size_t k = 0; k < p.size(); ++k) {
    const ComplexPoly& pk = ode.coefficient(static_cast<int>(k));
    if (pk.is_zero()) continue;
    const int d = pk.degree();
    p[k] = pk.eval_derivatives(z0, d);
    double fact = 1.0;
    for (int i = 0; i <= d; ++i) {
      if (i > 1) fact *= static_cast<double>(i);
      p[k][static_cast<size_t>(i)] /= fact;
    }
  }
  return p;
}

// Append coefficients to c (already seeded with >= n+1 entries) up to
// `count` entries, using the recurrence of the equation.
void extend_series(const std::vector<std::vector<Complex>>& p, int n,
                   std::vector<Complex>& c, int count) {
  for (int idx = static_cast<int>(c.size()); idx < count; ++idx) {
    const int j = idx - n - 1;
    Complex acc{};
    for (int k = 0; k <= n; ++k) {
      const auto& pk = p[static_cast<size_t>(k)];
      if (pk.empty()) continue;
      const int imax = std::min(j, static_cast<int>(pk.size()) - 1);
      for (int i = 0; i <= imax; ++i)
        acc += pk[static_cast<size_t>(i)] * c[static_cast<size_t>(j - i + k)] *
               rising(j - i, k);
    }
    c.push_back(-acc / rising(j, n + 1));
  }
}

double tail_sum(const std::vector<Complex>& c, double h, int window) {
  const int len = static_cast<int>(c.size());
  const int from = std::max(0, len - window);
  // log space: h^j alone can underflow even when |c_j| h^j does not
  const double lh = std::log(h);
  double t = 0.0;
  for (int j = from; j < len; ++j) {
    const double a = std::abs(c[static_cast<size_t>(j)]);
    if (a > 0.0) t += std::exp(std::log(a) + j * lh);
  }
  return t;
}

// Grow every series until its tail terms at h are negligible against the
// budget, or the cap is hit. Returns the max tail estimate at h.
double grow_for(const std::vector<std::vector<Complex>>& p, int n,
                std::vector<std::vector<Complex>>& series, double h,
                double budget, int min_len, int window) {
  double worst = 0.0;
  for (auto& c : series) {
    int len = std::max(min_len, static_cast<int>(c.size()));
    extend_series(p, n, c, len);
    while (static_cast<int>(c.size()) < kSeriesCap &&
           tail_sum(c, h, window) >= budget * 0.25)
      extend_series(p, n, c, std::min(kSeriesCap, static_cast<int>(c.size()) + 16));
    worst = std::max(worst, tail_sum(c, h, window));
  }
  return worst;
}

// Halve h until the tail estimate of every series beats tol*h.
double choose_step(const std::vector<std::vector<Complex>>& p, int n,
                   std::vector<std::vector<Complex>>& series, double h0,
                   double tol, int min_len, int window) {
  double h = h0;
  for (int halvings = 0;; ++halvings) {
    if (h < kStepFloor)
      throw StepUnderflow("continuation step fell below 1e-12");
    const double budget = tol * h;
    const double tail = grow_for(p, n, series, h, budget, min_len, window);
    if (tail < budget) return h;
    if (halvings >= kMaxHalvings)
      throw ToleranceUnachievable(
          "series truncation never met tolerance at the order cap");
    h *= 0.5;
  }
}

// f^(t)(z0 + hc) for t = 0..tmax from Taylor coefficients about z0.
std::vector<Complex> eval_derivs(const std::vector<Complex>& c, Complex hc,
                                 int tmax) {
  std::vector<Complex> out(static_cast<size_t>(tmax) + 1, Complex{});
  const int len = static_cast<int>(c.size());
  for (int t = 0; t <= tmax; ++t) {
    Complex acc{};
    Complex hi{1.0, 0.0};
    for (int i = 0; i + t < len; ++i) {
      acc += c[static_cast<size_t>(i + t)] * rising(i, t) * hi;
      hi *= hc;
    }
    out[static_cast<size_t>(t)] = acc;
  }
  return out;
}

double geometry_step(const OdeSystem& ode, Complex at) {
  double rho = 0.0;
  const int n = ode.rank();
  for (int k = 0; k <= n; ++k) {
    const double a = std::abs(ode.coefficient(k).eval(at));
    if (a > 0.0)
      rho = std::max(rho, std::pow(a, 1.0 / static_cast<double>(n + 1 - k)));
  }
  return std::min(1.0, 1.0 / (1.0 + rho));
}

double wrap_angle(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double y = std::fmod(x, two_pi);
  if (y > std::numbers::pi) y -= two_pi;
  if (y <= -std::numbers::pi) y += two_pi;
  return y;
}

}  // namespace

OdeSystem::OdeSystem(int n, std::vector<ComplexPoly> coefficients)
    : n_(n), coefficients_(std::move(coefficients)) {
  if (n_ < 1) throw std::invalid_argument("OdeSystem rank must be >= 1");
  if (coefficients_.size() != static_cast<size_t>(n_ + 1))
    throw std::invalid_argument("OdeSystem needs exactly n+1 coefficients");
}

bool OdeSystem::all_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](const ComplexPoly& p) { return p.is_zero(); });
}

FundamentalBasis::FundamentalBasis(OdeSystem ode, Complex basepoint,
                                   std::vector<ScaledJet> jets,
                                   bool identity_initialized)
    : ode_(std::move(ode)),
      basepoint_(basepoint),
      jets_(std::move(jets)),
      identity_initialized_(identity_initialized) {
  if (jets_.size() != static_cast<size_t>(ode_.rank() + 1))
    throw std::invalid_argument("basis needs n+1 jets");
  for (const auto& j : jets_)
    if (j.center() != jets_[0].center())
      throw std::invalid_argument("basis jets must share one center");
}

FundamentalBasis FundamentalBasis::from_jets(OdeSystem ode, Complex basepoint,
                                             std::vector<ScaledJet> jets) {
  return {std::move(ode), basepoint, std::move(jets), false};
}

std::vector<Complex> taylor_coefficients(const OdeSystem& ode, Complex z0,
                                         std::span<const Complex> init, int M) {
  const int n = ode.rank();
  if (static_cast<int>(init.size()) != n + 1)
    throw std::invalid_argument("init needs n+1 derivative values");
  if (M <= n + 1) throw std::invalid_argument("M must exceed n+1");
  std::vector<Complex> c(init.begin(), init.end());
  double fact = 1.0;
  for (int i = 0; i <= n; ++i) {
    if (i > 1) fact *= static_cast<double>(i);
    c[static_cast<size_t>(i)] /= fact;
  }
  const auto p = expand_coefficients(ode, z0);
  extend_series(p, n, c, M);
  return c;
}

double step_size(const OdeSystem& ode, Complex at, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int n = ode.rank();
  const auto p = expand_coefficients(ode, at);
  std::vector<std::vector<Complex>> series(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    auto& c = series[static_cast<size_t>(i)];
    c.assign(static_cast<size_t>(n) + 1, Complex{});
    double fact = 1.0;
    for (int s = 2; s <= i; ++s) fact *= static_cast<double>(s);
    c[static_cast<size_t>(i)] = 1.0 / fact;
  }
  return choose_step(p, n, series, geometry_step(ode, at), tol,
                     std::max(n + 2, 8), tail_window(ode));
}

BasisWalker::BasisWalker(OdeSystem ode, int m, double tol, Complex basepoint)
    : ode_(std::move(ode)), m_(m), tol_(tol), basepoint_(basepoint),
      position_(basepoint) {
  const int n = ode_.rank();
  if (m_ < n + 1) throw std::invalid_argument("jet order must be >= n+1");
  if (!(tol_ > 0.0) || tol_ > 1e-3)
    throw std::invalid_argument("tol must lie in (0, 1e-3]");
  solutions_.resize(static_cast<size_t>(n) + 1);
  // Identity data; derivatives above n are filled from the recurrence.
  const auto p = expand_coefficients(ode_, basepoint_);
  for (int i = 0; i <= n; ++i) {
    std::vector<Complex> c(static_cast<size_t>(n) + 1, Complex{});
    double fact = 1.0;
    for (int s = 2; s <= i; ++s) fact *= static_cast<double>(s);
    c[static_cast<size_t>(i)] = 1.0 / fact;
    extend_series(p, n, c, m_ + 2);
    auto& sol = solutions_[static_cast<size_t>(i)];
    sol.derivs = eval_derivs(c, Complex{}, m_);
    sol.scale = 0;
  }
}

void BasisWalker::step_once(Complex target) {
  const int n = ode_.rank();
  const Complex delta = target - position_;
  const double dist = std::abs(delta);
  if (dist == 0.0) return;
  const Complex dir = delta / dist;

  const auto p = expand_coefficients(ode_, position_);
  std::vector<std::vector<Complex>> series(solutions_.size());
  for (size_t i = 0; i < solutions_.size(); ++i) {
    auto& c = series[i];
    c.assign(solutions_[i].derivs.begin(),
             solutions_[i].derivs.begin() + n + 1);
    double fact = 1.0;
    for (int t = 0; t <= n; ++t) {
      if (t > 1) fact *= static_cast<double>(t);
      c[static_cast<size_t>(t)] /= fact;
    }
  }

  const double h0 = std::min(geometry_step(ode_, position_), dist);
  const double h = choose_step(p, n, series, h0, tol_,
                               std::max(m_ + 2, n + 2), tail_window(ode_));
  const bool final_step = h >= dist * (1.0 - 1e-15);
  const Complex hc = final_step ? delta : dir * h;

  for (size_t i = 0; i < solutions_.size(); ++i) {
    auto& sol = solutions_[i];
    sol.derivs = eval_derivs(series[i], hc, m_);
    double maxmag = 0.0;
    for (const auto& v : sol.derivs) maxmag = std::max(maxmag, std::abs(v));
    if (maxmag > 0.0) {
      const int shift = std::ilogb(maxmag);
      if (shift != 0) {
        for (auto& v : sol.derivs) v = ldexp_c(v, -shift);
        sol.scale += shift;
      }
    }
  }
  position_ = final_step ? target : position_ + hc;
}

void BasisWalker::advance_to(Complex target) {
  while (position_ != target) step_once(target);
}

FundamentalBasis BasisWalker::basis() const {
  std::vector<ScaledJet> jets;
  jets.reserve(solutions_.size());
  for (const auto& sol : solutions_)
    jets.emplace_back(sol.derivs, sol.scale, position_);
  return {ode_, basepoint_, std::move(jets), true};
}

FundamentalBasis continue_basis(const OdeSystem& ode, Complex target, int m,
                                double tol) {
  BasisWalker walker(ode, m, tol);
  walker.advance_to(target);
  return walker.basis();
}

LogComplex wronskian_abel(const OdeSystem& ode, Complex target) {
  const Complex q = ode.coefficient(ode.rank()).antiderivative().eval(target);
  return {-q.real(), -q.imag()};
}

LogComplex wronskian_log(const FundamentalBasis& basis) {
  const int n = basis.ode().rank();
  const size_t dim = static_cast<size_t>(n) + 1;
  std::vector<std::vector<Complex>> v(dim, std::vector<Complex>(dim));
  double log_abs = 0.0;
  for (size_t i = 0; i < dim; ++i) {
    const ScaledJet& jet = basis.jets()[i];
    if (jet.order() < n) throw std::invalid_argument("jet order below n");
    for (size_t j = 0; j < dim; ++j) v[i][j] = jet.values()[j];
    log_abs += jet.scale() * std::numbers::ln2;
  }
  double arg = 0.0;
  for (size_t col = 0; col < dim; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < dim; ++r)
      if (std::abs(v[r][col]) > std::abs(v[piv][col])) piv = r;
    if (v[piv][col] == Complex{})
      return {-std::numeric_limits<double>::infinity(), 0.0};
    if (piv != col) {
      std::swap(v[piv], v[col]);
      arg += std::numbers::pi;  // row swap flips the determinant sign
    }
    const Complex d = v[col][col];
    log_abs += std::log(std::abs(d));
    arg += std::arg(d);
    for (size_t r = col + 1; r < dim; ++r) {
      const Complex f = v[r][col] / d;
      for (size_t j = col; j < dim; ++j) v[r][j] -= f * v[col][j];
    }
  }
  return {log_abs, wrap_angle(arg)};
}

}  // namespace toda
