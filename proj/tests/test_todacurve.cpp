#include "toda/todacurve.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using toda::Complex;
using toda::ComplexPoly;
using toda::DerivedNorms;
using toda::FundamentalBasis;
using toda::Mobius;
using toda::OdeSystem;
using toda::ScaledJet;

namespace {

const double kLn2 = std::log(2.0);

OdeSystem zero_system(int n) {
  return {n, std::vector<ComplexPoly>(static_cast<size_t>(n) + 1)};
}

// jets of the raw curve (1, z, z^2) at z
FundamentalBasis rnc_basis(Complex z) {
  std::vector<ScaledJet> jets;
  jets.push_back(ScaledJet{{Complex{1, 0}, Complex{}, Complex{}}, 0, z});
  jets.push_back(ScaledJet{{z, Complex{1, 0}, Complex{}}, 0, z});
  jets.push_back(ScaledJet{{z * z, 2.0 * z, Complex{2, 0}}, 0, z});
  return FundamentalBasis::from_jets(zero_system(2), 0.0, std::move(jets));
}

ScaledJet random_jet(std::mt19937_64& rng, int order, Complex center) {
  std::vector<Complex> v(static_cast<size_t>(order) + 1);
  for (auto& x : v) x = testutil::disc(rng, 5.0);
  return {std::move(v), 0, center};
}

}  // namespace

TEST_CASE("derived norms of the Liouville basis (1, z)") {
  const OdeSystem ode = zero_system(1);
  const Complex z{1.0, 2.0};
  const DerivedNorms norms = derived_log_norms(continue_basis(ode, z, 2, 1e-10));
  CHECK(norms.lognorm(-1) == 0.0);
  CHECK(std::abs(norms.lognorm(0) - std::log1p(std::norm(z))) < 1e-13);
  CHECK(norms.lognorm(1) == 0.0);  // Abel with zero trace, exactly
}

TEST_CASE("derived norms of the raw curve (1, z, z^2)") {
  const Complex z{0.7, -0.3};
  const DerivedNorms norms = derived_log_norms(rnc_basis(z));
  const double r2 = std::norm(z);
  CHECK(std::abs(norms.lognorm(0) - std::log(1.0 + r2 + r2 * r2)) < 1e-13);
  CHECK(std::abs(norms.lognorm(1) - std::log(1.0 + 4.0 * r2 + r2 * r2)) < 1e-13);
  CHECK(std::abs(norms.lognorm(2) - std::log(4.0)) < 1e-13);
}

TEST_CASE("all norms vanish at the basepoint") {
  for (int n = 1; n <= 3; ++n) {
    const OdeSystem ode = zero_system(n);
    const DerivedNorms norms = derived_log_norms(continue_basis(ode, {}, n + 1, 1e-10));
    for (int k = -1; k <= n; ++k) CHECK(norms.lognorm(k) == 0.0);
  }
}

TEST_CASE("gram norms match brute-force minor enumeration") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(testutil::uniform(rng) * 3.0);
    const Complex z = testutil::disc(rng, 2.0);
    std::vector<ScaledJet> jets;
    for (int i = 0; i <= n; ++i) jets.push_back(random_jet(rng, n, z));
    const FundamentalBasis basis =
        FundamentalBasis::from_jets(zero_system(n), 0.0, jets);
    const DerivedNorms norms = derived_log_norms(basis);
    for (int k = 0; k <= n; ++k) {
      const double brute = testutil::log_sq_norm_brute(jets, k);
      CHECK(std::abs(norms.lognorm(k) - brute) < 1e-10);
    }
  }
}

TEST_CASE("ramified user bases are rejected") {
  const Complex z{0.4, 0.1};
  std::vector<ScaledJet> jets;
  jets.push_back(ScaledJet{{Complex{1, 0}, Complex{1, 0}}, 0, z});
  jets.push_back(ScaledJet{{Complex{1, 0}, Complex{1, 0}}, 0, z});  // dependent
  const FundamentalBasis basis =
      FundamentalBasis::from_jets(zero_system(1), 0.0, std::move(jets));
  CHECK_THROWS_AS(derived_log_norms(basis), toda::RamifiedPoint);
}

TEST_CASE("toda values from norms") {
  // all lognorm = 0 -> every u_k = log 2
  const DerivedNorms flat({}, {0.0, 0.0, 0.0, 0.0, 0.0});
  const toda::TodaPoint point = assemble_u(flat);
  REQUIRE(point.u.size() == 3);
  for (const double u : point.u) CHECK(u == kLn2);

  const OdeSystem ode = zero_system(1);
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    const Complex z = testutil::disc(rng, 3.0);
    const toda::TodaPoint p =
        assemble_u(derived_log_norms(continue_basis(ode, z, 2, 1e-10)));
    CHECK(std::abs(p.u[0] - testutil::liouville_p0_u(z)) < 1e-12);
  }

  const toda::TodaPoint rnc = assemble_u(derived_log_norms(rnc_basis({})));
  CHECK(std::abs(rnc.u[0] - kLn2) < 1e-15);
  CHECK(std::abs(rnc.u[1] - std::log(8.0)) < 1e-15);
}

TEST_CASE("u is invariant under a common gauge factor") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(testutil::uniform(rng) * 2.0);
    const OdeSystem ode = testutil::random_system(rng, n, 2);
    const Complex z = testutil::disc(rng, 2.0);
    const FundamentalBasis basis = continue_basis(ode, z, n + 1, 1e-10);

    ScaledJet gauge = random_jet(rng, n + 1, z);
    while (std::abs(gauge.values()[0]) < 0.5) gauge = random_jet(rng, n + 1, z);
    std::vector<ScaledJet> scaled;
    for (const auto& jet : basis.jets())
      scaled.push_back(jet_multiply(jet, gauge, n + 1));
    const FundamentalBasis gauged =
        FundamentalBasis::from_jets(ode, 0.0, std::move(scaled));

    const toda::TodaPoint a = assemble_u(derived_log_norms(basis));
    const toda::TodaPoint b = assemble_u(derived_log_norms(gauged));
    for (size_t j = 0; j < a.u.size(); ++j)
      CHECK(std::abs(a.u[j] - b.u[j]) < 1e-10);
  }
}

TEST_CASE("schwarzian examples") {
  // f = z: jet (z, 1, 0, 0)
  const ScaledJet id{{Complex{0.7, 0.2}, Complex{1, 0}, Complex{}, Complex{}}, 0, {0.7, 0.2}};
  CHECK(std::abs(schwarzian(id)) < 1e-15);

  // f = e^z at any center: values e^z (1,1,1,1); the common factor sits in
  // the mantissas and cancels
  const Complex ez = std::exp(Complex{0.3, -0.4});
  const ScaledJet exp_jet{{ez, ez, ez, ez}, 0, {0.3, -0.4}};
  CHECK(std::abs(schwarzian(exp_jet) - Complex{-0.5, 0.0}) < 1e-14);

  const ScaledJet critical{{Complex{1, 0}, Complex{}, Complex{1, 0}, Complex{}}, 0, {}};
  CHECK_THROWS_AS(schwarzian(critical), toda::CriticalPoint);
}

TEST_CASE("schwarzian of a solution ratio recovers the polynomial") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 8; ++trial) {
    const ComplexPoly P = testutil::random_poly(rng, 2);
    const OdeSystem ode{1, {P.scaled(0.5), ComplexPoly{}}};
    for (int pt = 0; pt < 12; ++pt) {
      const Complex z = testutil::disc(rng, 2.0);
      const FundamentalBasis basis = continue_basis(ode, z, 3, 1e-10);
      const ScaledJet& w1 = basis.jets()[0];
      const ScaledJet& w2 = basis.jets()[1];
      const bool invert =
          std::abs(w2.values()[0]) * std::exp2(w2.scale() - w1.scale()) <
          std::abs(w1.values()[0]);
      const ScaledJet f =
          invert ? jet_divide(w2, w1, 3) : jet_divide(w1, w2, 3);
      CHECK(std::abs(schwarzian(f) - P.eval(z)) < 1e-8);
    }
  }
}

TEST_CASE("liouville u closed forms") {
  const ComplexPoly zero{};
  CHECK(std::abs(liouville_u(zero, {}, 1e-10) - kLn2) < 1e-12);
  CHECK(std::abs(liouville_u(zero, 1.0, 1e-10) - (-kLn2)) < 1e-12);
  CHECK(std::abs(liouville_u(zero, 10.0, 1e-10) - (kLn2 - 2.0 * std::log(101.0))) <
        1e-11);
}

TEST_CASE("liouville u agrees with the n=1 pipeline") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 8; ++trial) {
    const ComplexPoly P = testutil::random_poly(rng, 2);
    const OdeSystem ode{1, {P.scaled(0.5), ComplexPoly{}}};
    for (int pt = 0; pt < 6; ++pt) {
      const Complex z = testutil::disc(rng, 3.0);
      const double direct = liouville_u(P, z, 1e-10);
      const double pipeline =
          assemble_u(derived_log_norms(continue_basis(ode, z, 2, 1e-10))).u[0];
      CHECK(std::abs(direct - pipeline) < 1e-8);
    }
  }
}

TEST_CASE("mobius jets") {
  const Mobius id{1.0, 0.0, 0.0, 1.0};
  const ScaledJet j = mobius_apply(id, 5.0, 1);
  CHECK(std::abs(j.true_value(0) - Complex{5, 0}) < 1e-15);
  CHECK(std::abs(j.true_value(1) - Complex{1, 0}) < 1e-15);

  const Mobius inv{0.0, 1.0, 1.0, 0.0};
  const ScaledJet r = mobius_apply(inv, 2.0, 2);
  CHECK(std::abs(r.true_value(0) - Complex{0.5, 0}) < 1e-15);
  CHECK(std::abs(r.true_value(1) - Complex{-0.25, 0}) < 1e-15);
  CHECK(std::abs(r.true_value(2) - Complex{0.25, 0}) < 1e-15);

  CHECK_THROWS_AS(Mobius(1.0, 2.0, 2.0, 4.0), toda::DegenerateMobius);
  CHECK_THROWS_AS(mobius_apply(inv, 0.0, 1), toda::PoleAt);
}

TEST_CASE("mobius maps have vanishing schwarzian") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex a = testutil::disc(rng), b = testutil::disc(rng);
    const Complex c = testutil::disc(rng), d = testutil::disc(rng);
    if (std::abs(a * d - b * c) < 0.1) continue;
    const Mobius map{a, b, c, d};
    const Complex z = testutil::disc(rng, 2.0);
    if (std::abs(map.c() * z + map.d()) < 0.1) continue;
    CHECK(std::abs(schwarzian(mobius_apply(map, z, 3))) < 1e-10);
  }
}
