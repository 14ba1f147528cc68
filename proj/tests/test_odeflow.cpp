#include "toda/odeflow.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using toda::Complex;
using toda::ComplexPoly;
using toda::FundamentalBasis;
using toda::OdeSystem;

namespace {

OdeSystem liouville_system(const ComplexPoly& half_p) {
  return {1, {half_p, ComplexPoly{}}};
}

// Independent series oracle for w'' + (z/2) w = 0 about 0:
// (m+2)(m+1) c_{m+2} + (1/2) c_{m-1} = 0.
std::vector<Complex> airy_series_oracle(Complex c0, Complex c1, int M) {
  std::vector<Complex> c(static_cast<size_t>(M), Complex{});
  c[0] = c0;
  c[1] = c1;
  for (int m = 0; m + 2 < M; ++m) {
    const Complex prev = m >= 1 ? c[static_cast<size_t>(m - 1)] : Complex{};
    c[static_cast<size_t>(m + 2)] =
        -0.5 * prev / static_cast<double>((m + 2) * (m + 1));
  }
  return c;
}

}  // namespace

TEST_CASE("taylor coefficients of w'' = 0") {
  const OdeSystem ode = liouville_system(ComplexPoly{});
  const std::vector<Complex> init{Complex{}, Complex{1.0, 0.0}};
  const auto c = taylor_coefficients(ode, {}, init, 5);
  CHECK(c.size() == 5);
  CHECK(c[0] == Complex{});
  CHECK(c[1] == Complex{1.0, 0.0});
  CHECK(c[2] == Complex{});
  CHECK(c[3] == Complex{});
  CHECK(c[4] == Complex{});
}

TEST_CASE("taylor coefficients of cosh(z/2)") {
  // w'' = (1/4) w, init (1, 0)
  const OdeSystem ode = liouville_system(ComplexPoly::constant(-0.25));
  const std::vector<Complex> init{Complex{1.0, 0.0}, Complex{}};
  const auto c = taylor_coefficients(ode, {}, init, 5);
  CHECK(std::abs(c[0] - Complex{1.0, 0.0}) < 1e-16);
  CHECK(std::abs(c[1]) < 1e-16);
  CHECK(std::abs(c[2] - Complex{0.125, 0.0}) < 1e-16);
  CHECK(std::abs(c[3]) < 1e-16);
  CHECK(std::abs(c[4] - Complex{1.0 / 384.0, 0.0}) < 1e-17);
}

TEST_CASE("taylor coefficients match an independent recurrence") {
  const OdeSystem ode = liouville_system(ComplexPoly::monomial(1, 0.5));
  const std::vector<Complex> init{Complex{1.0, 0.0}, Complex{}};
  const auto got = taylor_coefficients(ode, {}, init, 12);
  const auto want = airy_series_oracle(init[0], init[1], 12);
  for (size_t j = 0; j < 12; ++j) CHECK(std::abs(got[j] - want[j]) < 1e-16);
  CHECK(got[2] == Complex{});                       // P_0(0) = 0
  CHECK(std::abs(got[3] + 1.0 / 12.0) < 1e-16);     // c_3 = -1/12
}

TEST_CASE("taylor coefficients are linear in the initial data") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(testutil::uniform(rng) * 3.0);
    const OdeSystem ode = testutil::random_system(rng, n, 2);
    std::vector<Complex> a(static_cast<size_t>(n) + 1), b(a.size()), ab(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
      a[i] = testutil::disc(rng);
      b[i] = testutil::disc(rng);
      ab[i] = a[i] + b[i];
    }
    const Complex z0 = testutil::disc(rng, 2.0);
    const auto ca = taylor_coefficients(ode, z0, a, 24);
    const auto cb = taylor_coefficients(ode, z0, b, 24);
    const auto cab = taylor_coefficients(ode, z0, ab, 24);
    for (size_t j = 0; j < cab.size(); ++j) {
      const double scale = std::max({std::abs(ca[j]), std::abs(cb[j]), 1e-12});
      CHECK(std::abs(cab[j] - ca[j] - cb[j]) / scale < 1e-10);
    }
  }
}

TEST_CASE("continuation of the coefficient-free basis is exact") {
  const OdeSystem ode = liouville_system(ComplexPoly{});
  const FundamentalBasis basis = continue_basis(ode, 3.0, 2, 1e-10);
  CHECK(basis.identity_initialized());
  CHECK(basis.jets()[0].true_value(0) == Complex{1.0, 0.0});
  CHECK(basis.jets()[0].true_value(1) == Complex{});
  CHECK(basis.jets()[1].true_value(0) == Complex{3.0, 0.0});
  CHECK(basis.jets()[1].true_value(1) == Complex{1.0, 0.0});
}

TEST_CASE("continuation reproduces cosh and sinh") {
  const OdeSystem ode = liouville_system(ComplexPoly::constant(-0.25));
  const FundamentalBasis basis = continue_basis(ode, 1.0, 2, 1e-12);
  const double f0 = std::cosh(0.5);
  const double f1 = 2.0 * std::sinh(0.5);
  CHECK(std::abs(basis.jets()[0].true_value(0) - Complex{f0, 0.0}) < 1e-12);
  CHECK(std::abs(basis.jets()[1].true_value(0) - Complex{f1, 0.0}) < 1e-12);
}

TEST_CASE("monomial basis for the zero system") {
  const OdeSystem ode{2, {ComplexPoly{}, ComplexPoly{}, ComplexPoly{}}};
  const Complex target{2.0, 1.0};
  const FundamentalBasis basis = continue_basis(ode, target, 3, 1e-10);
  // basis (1, z, z^2/2)
  CHECK(std::abs(basis.jets()[1].true_value(0) - target) < 1e-14);
  CHECK(std::abs(basis.jets()[2].true_value(0) - 0.5 * target * target) < 1e-13);
  CHECK(std::abs(basis.jets()[2].true_value(1) - target) < 1e-14);
  CHECK(std::abs(basis.jets()[2].true_value(2) - Complex{1.0, 0.0}) < 1e-14);

  const OdeSystem big{3, {ComplexPoly{}, ComplexPoly{}, ComplexPoly{}, ComplexPoly{}}};
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const Complex z = testutil::disc(rng, 4.0);
    const FundamentalBasis b = continue_basis(big, z, 4, 1e-10);
    double fact = 1.0;
    Complex zj{1.0, 0.0};
    for (int j = 0; j <= 3; ++j) {
      if (j > 1) fact *= j;
      const Complex want = zj / fact;
      const double scale = std::max(std::abs(want), 1e-12);
      CHECK(std::abs(b.jets()[static_cast<size_t>(j)].true_value(0) - want) / scale <
            1e-13);
      zj *= z;
    }
  }
}

TEST_CASE("wronskian by Abel's identity") {
  const OdeSystem free = liouville_system(ComplexPoly{});
  CHECK(wronskian_abel(free, {5.0, -3.0}).log_abs == 0.0);
  CHECK(wronskian_abel(free, {5.0, -3.0}).arg == 0.0);

  const Complex c{0.3, 0.4};
  const OdeSystem traced{1, {ComplexPoly{}, ComplexPoly::constant(c)}};
  const Complex z{2.0, -1.0};
  const auto w = wronskian_abel(traced, z);
  CHECK(std::abs(w.log_abs - (-(c * z).real())) < 1e-15);
  CHECK(std::abs(w.arg - (-(c * z).imag())) < 1e-15);

  const OdeSystem cubic{2, {ComplexPoly{}, ComplexPoly{}, ComplexPoly::monomial(1)}};
  const auto w2 = wronskian_abel(cubic, 2.0);
  CHECK(std::abs(w2.log_abs - (-2.0)) < 1e-15);  // -Re(z^2/2) at z=2
  CHECK(std::abs(w2.arg) < 1e-15);
}

TEST_CASE("step size heuristic") {
  const OdeSystem free{1, {ComplexPoly{}, ComplexPoly{}}};
  CHECK(step_size(free, {0.7, 0.1}, 1e-10) == 1.0);

  const OdeSystem airy = liouville_system(ComplexPoly::monomial(1, 0.5));
  const double h = step_size(airy, 8.0, 1e-10);
  CHECK(h <= 1.0 / 3.0 + 1e-15);  // rho = |z/2|^(1/2) = 2 at z = 8
  CHECK(h > 0.0);

  const OdeSystem huge = liouville_system(ComplexPoly::constant(1e6));
  CHECK(step_size(huge, {}, 1e-10) <= 1e-3);
}

TEST_CASE("pathological magnitudes underflow the step") {
  const OdeSystem monster = liouville_system(ComplexPoly::constant(1e300));
  CHECK_THROWS_AS(continue_basis(monster, 1.0, 2, 1e-10), toda::StepUnderflow);
}

TEST_CASE("continuation preconditions") {
  const OdeSystem free{1, {ComplexPoly{}, ComplexPoly{}}};
  CHECK_THROWS_AS(continue_basis(free, 1.0, 2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(continue_basis(free, 1.0, 1, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(OdeSystem(0, {ComplexPoly{}}), std::invalid_argument);
  CHECK_THROWS_AS(OdeSystem(2, {ComplexPoly{}}), std::invalid_argument);
}

TEST_CASE("wronskian from jets matches Abel on random systems") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + static_cast<int>(testutil::uniform(rng) * 3.0);
    const OdeSystem ode = testutil::random_system(rng, n, 2);
    for (int pt = 0; pt < 4; ++pt) {
      const Complex z = testutil::disc(rng, 3.0);
      const FundamentalBasis basis = continue_basis(ode, z, n + 1, 1e-10);
      const auto jets = wronskian_log(basis);
      const auto abel = wronskian_abel(ode, z);
      CHECK(std::abs(jets.log_abs - abel.log_abs) < 1e-8);
      CHECK(std::abs(testutil::wrap_angle(jets.arg - abel.arg)) < 1e-8);
    }
  }
}

TEST_CASE("continuation is path independent") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + static_cast<int>(testutil::uniform(rng) * 2.0);
    const OdeSystem ode = testutil::random_system(rng, n, 2);
    const Complex target = testutil::disc(rng, 3.0);

    const FundamentalBasis direct = continue_basis(ode, target, n + 1, 1e-10);
    toda::BasisWalker walker(ode, n + 1, 1e-10);
    walker.advance_to(0.5 * target);
    walker.advance_to(target);
    const FundamentalBasis split = walker.basis();

    for (size_t i = 0; i < direct.jets().size(); ++i) {
      const auto& a = direct.jets()[i];
      const auto& b = split.jets()[i];
      const int ds = b.scale() - a.scale();
      for (int j = 0; j <= n; ++j) {
        const Complex va = a.values()[static_cast<size_t>(j)];
        const Complex vb = b.values()[static_cast<size_t>(j)] * std::exp2(ds);
        const double scale = std::max(std::abs(va), 1e-12);
        CHECK(std::abs(va - vb) / scale < 1e-10);
      }
    }
  }
}
