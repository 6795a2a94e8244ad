#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "symprod/domains.hpp"
#include "symprod/errors.hpp"
#include "symprod/sampling.hpp"

using namespace symprod;

TEST_CASE("contains examples") {
  const auto in = contains(PlanarDomain::unit_disc(), 0.0);
  CHECK(in.state == Membership::In);
  CHECK(in.margin == -1.0);

  CHECK(contains(PlanarDomain::complement_finite({0.0, 1.0}), 1.0).state == Membership::Out);

  const auto d = PlanarDomain::disc_minus_finite(0.0, 1.0, {0.5});
  CHECK(contains(d, Complex(0.5, 1e-12)).state == Membership::Boundary);
}

TEST_CASE("contains state agrees with margin and tolerance") {
  const std::vector<PlanarDomain> domains = {
      PlanarDomain::unit_disc(), PlanarDomain::disc(Complex(1.0, -2.0), 0.5),
      PlanarDomain::complement_finite({0.0, 1.0, Complex(0.0, 2.0)}),
      PlanarDomain::disc_minus_finite(0.0, 2.0, {0.5, Complex(-1.0, 0.3)})};
  for (const auto& d : domains) {
    for (int i = 0; i < 2000; ++i) {
      Rng rng = derive_rng(21, 0, i);
      const Complex lambda = uniform_in_disc(rng, 0.0, 3.0);
      const auto v = contains(d, lambda);
      if (v.margin < -kDefaultBoundaryTolerance) CHECK(v.state == Membership::In);
      if (v.margin > kDefaultBoundaryTolerance) CHECK(v.state == Membership::Out);
      if (v.state == Membership::In) CHECK(v.margin < -kDefaultBoundaryTolerance);
    }
  }
}

TEST_CASE("contains near the circle and near punctures") {
  const auto disc = PlanarDomain::unit_disc();
  CHECK(contains(disc, 1.0 + 1e-6).state == Membership::Out);
  CHECK(contains(disc, 1.0 - 1e-6).state == Membership::In);
  CHECK(contains(disc, 1.0 + 1e-10).state == Membership::Boundary);
  const auto punctured = PlanarDomain::complement_finite({0.0});
  CHECK(contains(punctured, 1e-6).state == Membership::In);
  CHECK(contains(punctured, 1e-10).state == Membership::Boundary);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(PlanarDomain::disc(0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(PlanarDomain::disc(0.0, -1.0), ValidationError);
  CHECK_THROWS_AS(PlanarDomain::complement_finite({0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(PlanarDomain::disc_minus_finite(0.0, 1.0, {2.0}), ValidationError);
  CHECK(PlanarDomain::disc(Complex(1.0, 1.0), 2.0).max_modulus() == doctest::Approx(std::sqrt(2.0) + 2.0));
}

TEST_CASE("complement cardinality") {
  CHECK(*complement_cardinality(PlanarDomain::complement_finite({0.0, 1.0})).count == 2);
  CHECK(complement_cardinality(PlanarDomain::unit_disc()).infinite());
  CHECK(complement_cardinality(PlanarDomain::disc_minus_finite(0.0, 1.0, {0.1})).infinite());
  std::vector<Complex> five;
  for (int j = 0; j < 5; ++j) five.emplace_back(j, 0.0);
  const auto c = complement_cardinality(PlanarDomain::complement_finite(five));
  CHECK(*c.count == 5);
  CHECK(c.at_least(5));
  CHECK_FALSE(c.at_least(6));
}

TEST_CASE("planar maps compose as matrices") {
  const auto f = PlanarMap::disc_automorphism(0.0, 1.0, Complex(0.3, 0.2), Complex(0.0, 1.0));
  const auto g = PlanarMap::disc_automorphism(0.0, 1.0, Complex(-0.5, 0.1));
  const auto fg = f.compose(g);
  for (int i = 0; i < 100; ++i) {
    Rng rng = derive_rng(22, 0, i);
    const Complex x = uniform_in_disc(rng);
    CHECK(std::abs(fg(x) - f(g(x))) < 1e-13);
  }
  CHECK(PlanarMap::identity()(Complex(2.0, 3.0)) == Complex(2.0, 3.0));
  CHECK(PlanarMap::constant(Complex(0.25, 0.0))(Complex(5.0, 1.0)) == Complex(0.25, 0.0));
}

TEST_CASE("disc automorphism matches the Mobius oracle") {
  for (int i = 0; i < 100; ++i) {
    Rng rng = derive_rng(23, 0, i);
    const Complex a = uniform_in_disc(rng, 0.0, 0.9);
    const Complex x = uniform_in_disc(rng);
    const auto f = PlanarMap::disc_automorphism(0.0, 1.0, a);
    CHECK(std::abs(f(x) - oracle::mobius(a, x)) < 1e-13);
    CHECK(std::abs(f(a)) < 1e-15);
  }
  const auto g = PlanarMap::disc_automorphism(Complex(2.0, 1.0), 3.0, Complex(2.5, 0.0));
  CHECK(std::abs(g(Complex(2.5, 0.0))) < 1e-15);
  CHECK(std::abs(g(Complex(5.0, 1.0))) == doctest::Approx(1.0));
}

TEST_CASE("disc_peak_function examples") {
  const auto f = disc_peak_function(1.0);
  CHECK(f(1.0) == Complex(1.0));
  CHECK(f(0.0) == Complex(0.5));
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Rng rng = derive_rng(24, 0, i);
    worst = std::max(worst, std::abs(f(uniform_in_disc(rng))));
  }
  CHECK(worst < 1.0);
  const Complex zeta = std::polar(1.0, 2.0);
  CHECK(std::abs(disc_peak_function(zeta)(zeta) - 1.0) < 1e-15);
  CHECK_THROWS_AS(disc_peak_function(0.5), ValidationError);
}

TEST_CASE("c_separating_function examples") {
  const Complex half[] = {0.5};
  const auto h = c_separating_function(PlanarDomain::unit_disc(), 0.0, half);
  CHECK(h(0.0) == Complex(0.0));
  CHECK(std::abs(h(0.5) - 0.5) < 1e-15);

  const Complex zero[] = {0.0};
  const auto g = c_separating_function(PlanarDomain::unit_disc(), 0.5, zero);
  CHECK(std::abs(g(0.0) + 0.5) < 1e-15);

  const auto d = PlanarDomain::disc_minus_finite(0.0, 1.0, {1.0 / 3.0});
  const Complex third[] = {1.0 / 3.0};
  const auto k = c_separating_function(d, 0.5, third);
  CHECK(std::abs(k(1.0 / 3.0)) > 0.0);
  CHECK(std::abs(k(0.5)) < 1e-15);
  REQUIRE(k.sup_bound.has_value());
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Rng rng = derive_rng(25, 0, i);
    worst = std::max(worst, std::abs(k(sample_in_domain(rng, d))));
  }
  CHECK(worst < 1.0);
}

TEST_CASE("c_separating_function preconditions") {
  const Complex same[] = {0.5};
  CHECK_THROWS_AS(c_separating_function(PlanarDomain::unit_disc(), 0.5, same), ValidationError);
  CHECK_THROWS_AS(c_separating_function(PlanarDomain::complement_finite({0.0}), 0.5, {}), UnsupportedError);
  CHECK_THROWS_AS(c_separating_function(PlanarDomain::unit_disc(), 2.0, {}), ValidationError);
}

TEST_CASE("neg_exhaustion examples") {
  const auto u = neg_exhaustion(PlanarDomain::unit_disc());
  CHECK(u(0.0) == -1.0);
  CHECK(u(1.0 - 1e-6) == doctest::Approx(-1e-6).epsilon(1e-9));
  CHECK_THROWS_AS(neg_exhaustion(PlanarDomain::complement_finite({0.0})), UnsupportedError);
}

TEST_CASE("neg_exhaustion satisfies the sub-mean-value inequality") {
  const auto u = neg_exhaustion(PlanarDomain::unit_disc());
  constexpr int kCircle = 128;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = derive_rng(26, 0, i);
    const Complex a = uniform_in_disc(rng, 0.0, 0.9);
    const double rho = (1.0 - std::abs(a)) * uniform01(rng);
    double mean = 0.0;
    for (int l = 0; l < kCircle; ++l) mean += u(a + std::polar(rho, 2.0 * std::numbers::pi * l / kCircle));
    mean /= kCircle;
    CHECK(u(a) <= mean + 1e-9);
  }
}
