#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "symprod/errors.hpp"
#include "symprod/invmetrics.hpp"
#include "symprod/sampling.hpp"

using namespace symprod;

namespace {

const SymProduct kG2(PlanarDomain::unit_disc(), 2);

ComplexPoint g2_point(Rng& rng, double radius = 0.95) {
  const Complex r[] = {uniform_in_disc(rng, 0.0, radius), uniform_in_disc(rng, 0.0, radius)};
  return symmetrize(r);
}

}  // namespace

TEST_CASE("poincare examples and oracle") {
  CHECK(poincare(0.0, 0.0) == 0.0);
  CHECK(poincare(0.0, 0.5) == doctest::Approx(0.5493061443340549).epsilon(1e-15));
  for (int i = 0; i < 200; ++i) {
    Rng rng = derive_rng(41, 0, i);
    const Complex a = uniform_in_disc(rng, 0.0, 0.99), b = uniform_in_disc(rng, 0.0, 0.99);
    CHECK(poincare(a, b) == doctest::Approx(oracle::poincare(a, b)).epsilon(1e-10));
    CHECK(poincare(a, b) == poincare(b, a));
  }
  CHECK_THROWS_AS(poincare(1.0, 0.0), ValidationError);
}

TEST_CASE("poincare is Mobius invariant") {
  for (int i = 0; i < 200; ++i) {
    Rng rng = derive_rng(42, 0, i);
    const Complex a = uniform_in_disc(rng, 0.0, 0.9), b = uniform_in_disc(rng, 0.0, 0.9);
    const auto m = PlanarMap::disc_automorphism(0.0, 1.0, uniform_in_disc(rng, 0.0, 0.9),
                                                std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng)));
    CHECK(std::abs(poincare(m(a), m(b)) - poincare(a, b)) < 1e-10);
  }
}

TEST_CASE("disc_distance rescales the disc") {
  const auto d = PlanarDomain::disc(Complex(1.0, 1.0), 2.0);
  CHECK(disc_distance(d, Complex(1.0, 1.0), Complex(2.0, 1.0)) == doctest::Approx(std::atanh(0.5)));
  CHECK_THROWS_AS(disc_distance(PlanarDomain::complement_finite({0.0}), 0.1, 0.2), UnsupportedError);
}

TEST_CASE("phi_omega examples") {
  CHECK(phi_omega(std::polar(1.0, 0.7), 0.0, 0.0) == Complex(0.0));
  const Complex omega = std::polar(1.0, 1.3), p(0.2, -0.4);
  CHECK(std::abs(phi_omega(omega, 0.0, p) - omega * p) < 1e-16);
  CHECK(phi_omega(1.0, 1.5, 0.5) == Complex(-1.0));
  CHECK_THROWS_AS(phi_omega(1.0, 2.0, 0.3), ValidationError);
}

TEST_CASE("phi_omega maps the symmetrized bidisc into the disc") {
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Rng rng = derive_rng(43, 0, i);
    const auto z = g2_point(rng, 1.0);
    for (int k = 0; k < 32; ++k) {
      const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi * k / 32.0);
      worst = std::max(worst, std::abs(phi_omega(omega, z[0], z[1])));
    }
  }
  CHECK(worst < 1.0);
}

TEST_CASE("carath_lower calibration") {
  const ComplexPoint o{0.0, 0.0};
  CHECK(carath_lower(kG2, o, o).lower == 0.0);
  for (double m : {0.3, 0.6, 0.9}) {
    for (double arg : {0.0, 1.0, 2.5}) {
      const ComplexPoint w{0.0, std::polar(m, arg)};
      CHECK(std::abs(carath_lower(kG2, o, w).lower - std::atanh(m)) <= 1e-9);
    }
  }
}

TEST_CASE("carath_lower needs interior points") {
  CHECK_THROWS_AS(carath_lower(kG2, ComplexPoint{0.0, 0.0}, ComplexPoint{4.0, 4.0}), ValidationError);
  const SymProduct plane(PlanarDomain::complement_finite({0.0, 1.0, 2.0, 3.0}), 2);
  const auto b = carath_lower(plane, ComplexPoint{0.5, 0.0625}, ComplexPoint{5.0, 6.5});
  CHECK(b.lower == 0.0);
  CHECK(b.lower_cert.kind == LowerCertificate::Kind::Trivial);
}

TEST_CASE("permutation bound examples") {
  const ComplexPoint o{0.0, 0.0};
  CHECK(lempert_upper_permutation(kG2, o, o).upper == 0.0);
  const Complex p(0.0, 0.49);
  CHECK(lempert_upper_permutation(kG2, o, ComplexPoint{0.0, p}).upper ==
        doctest::Approx(std::atanh(std::sqrt(0.49))).epsilon(1e-12));
  CHECK_THROWS_AS(lempert_upper_permutation(SymProduct(PlanarDomain::complement_finite({0.0}), 2), o, o),
                  UnsupportedError);
}

TEST_CASE("permutation bound never exceeds the identity pairing") {
  for (int i = 0; i < 100; ++i) {
    Rng rng = derive_rng(44, 0, i);
    const Complex a[] = {uniform_in_disc(rng, 0.0, 0.9), uniform_in_disc(rng, 0.0, 0.9)};
    const Complex b[] = {uniform_in_disc(rng, 0.0, 0.9), uniform_in_disc(rng, 0.0, 0.9)};
    const double identity = std::max(oracle::poincare(a[0], b[0]), oracle::poincare(a[1], b[1]));
    const double crossed = std::max(oracle::poincare(a[0], b[1]), oracle::poincare(a[1], b[0]));
    const double bound = lempert_upper_permutation(kG2, symmetrize(a), symmetrize(b)).upper;
    CHECK(bound <= identity + 1e-8);
    CHECK(bound == doctest::Approx(std::min(identity, crossed)).epsilon(1e-7));
  }
}

TEST_CASE("disc search calibration") {
  const ComplexPoint o{0.0, 0.0};
  CHECK(lempert_upper_disc_search(kG2, o, o).upper == 0.0);
  const auto b = lempert_upper_disc_search(kG2, o, ComplexPoint{0.0, 0.5});
  CHECK(b.upper <= std::atanh(0.5) + 1e-3);
  CHECK(b.upper >= std::atanh(0.5) - 1e-9);
  REQUIRE(b.upper_cert.disc.has_value());
  const auto& disc = *b.upper_cert.disc;
  const auto start = disc(0.0);
  const auto end = disc(disc.sigma);
  CHECK(std::abs(start[0]) + std::abs(start[1]) < 1e-12);
  CHECK(std::abs(end[0]) < 1e-9);
  CHECK(std::abs(end[1] - 0.5) < 1e-9);
  for (int l = 0; l < 64; ++l) CHECK(member(kG2, disc(std::polar(0.999, 2.0 * std::numbers::pi * l / 64))).state ==
                                     Membership::In);
}

TEST_CASE("disc search dominates the permutation bound") {
  DiscSearchOptions opts;
  opts.multistarts = 2;
  opts.budget = 300;
  for (int i = 0; i < 8; ++i) {
    Rng rng = derive_rng(45, 0, i);
    const auto z = g2_point(rng), w = g2_point(rng);
    const double perm = lempert_upper_permutation(kG2, z, w).upper;
    CHECK(lempert_upper_disc_search(kG2, z, w, opts).upper <= perm + 1e-6);
  }
}

TEST_CASE("disc search on a punctured disc and a punctured plane") {
  DiscSearchOptions opts;
  opts.multistarts = 2;
  opts.budget = 400;
  const SymProduct punctured(PlanarDomain::disc_minus_finite(0.0, 1.0, {Complex(0.0, 0.5)}), 2);
  const Complex a[] = {0.1, -0.2}, b[] = {0.3, Complex(-0.1, -0.3)};
  const auto bound = lempert_upper_disc_search(punctured, symmetrize(a), symmetrize(b), opts);
  CHECK(std::isfinite(bound.upper));
  CHECK(bound.upper >= carath_lower(punctured, symmetrize(a), symmetrize(b)).lower - 1e-9);

  const SymProduct plane(PlanarDomain::complement_finite({0.0, 1.0}), 2);
  const auto free = lempert_upper_disc_search(plane, ComplexPoint{3.0, 1.0}, ComplexPoint{5.0, 3.0}, opts);
  CHECK(free.upper >= 0.0);
  CHECK(std::isfinite(free.upper));
}

TEST_CASE("sandwich, symmetry and triangle inequality") {
  DiscSearchOptions opts;
  opts.multistarts = 2;
  opts.budget = 300;
  for (int i = 0; i < 30; ++i) {
    Rng rng = derive_rng(46, 0, i);
    const auto z = g2_point(rng), w = g2_point(rng), v = g2_point(rng);
    const double lower = carath_lower(kG2, z, w).lower;
    CHECK(lower <= lempert_upper_permutation(kG2, z, w).upper + 1e-9);
    if (i < 10) CHECK(lower <= lempert_upper_disc_search(kG2, z, w, opts).upper + 1e-9);
    CHECK(std::abs(carath_lower(kG2, w, z).lower - lower) <= 1e-10);
    CHECK(std::abs(lempert_upper_permutation(kG2, w, z).upper - lempert_upper_permutation(kG2, z, w).upper) <=
          1e-10);
    CHECK(lower <= carath_lower(kG2, z, v).lower + carath_lower(kG2, v, w).lower + 2e-6);
  }
}

TEST_CASE("projection lower bound") {
  CHECK(projection_radius(kG2, 2.0) == doctest::Approx(9.0));
  const ComplexPoint boundary{1.5, 0.5};
  const ComplexPoint o{0.0, 0.0};
  CHECK(kobayashi_lower_projection(kG2, o, o, boundary) == 0.0);
  for (int i = 0; i < 100; ++i) {
    Rng rng = derive_rng(47, 0, i);
    const auto z = g2_point(rng), w = g2_point(rng);
    const Complex outside = std::polar(1.0 + 0.5 * uniform01(rng), 6.28 * uniform01(rng));
    const Complex r[] = {outside, 0.0};
    const double lower = kobayashi_lower_projection(kG2, z, w, symmetrize(r));
    CHECK(lower >= 0.0);
    CHECK(lower <= lempert_upper_permutation(kG2, z, w).upper + 1e-9);
  }
  CHECK_THROWS_AS(kobayashi_lower_projection(SymProduct(PlanarDomain::complement_finite({0.0}), 2), o, o, boundary),
                  UnsupportedError);
}

TEST_CASE("exhaustion value") {
  CHECK(exhaustion_value(kG2, ComplexPoint{0.0, 0.0}) == doctest::Approx(-1.0).epsilon(1e-12));
  for (double eps : {1e-2, 1e-4}) {
    const Complex r[] = {1.0 - eps, 0.5};
    CHECK(exhaustion_value(kG2, symmetrize(r)) == doctest::Approx(-eps).epsilon(1e-6));
  }
  CHECK_THROWS_AS(exhaustion_value(kG2, ComplexPoint{4.0, 4.0}), ValidationError);
  CHECK_THROWS_AS(exhaustion_value(SymProduct(PlanarDomain::complement_finite({0.0}), 2), ComplexPoint{3.0, 1.0}),
                  UnsupportedError);
}

TEST_CASE("exhaustion value is plurisubharmonic along complex lines") {
  constexpr int kCircle = 64;
  for (int i = 0; i < 300; ++i) {
    Rng rng = derive_rng(48, 0, i);
    const auto a = g2_point(rng, 0.97);
    const Complex d0 = uniform_in_disc(rng), d1 = uniform_in_disc(rng);
    double rho = 0.3;
    std::vector<ComplexPoint> circle;
    for (;;) {
      circle.clear();
      for (int l = 0; l < kCircle; ++l) {
        const Complex e = std::polar(rho, 2.0 * std::numbers::pi * l / kCircle);
        circle.push_back(ComplexPoint{a[0] + e * d0, a[1] + e * d1});
      }
      bool inside = true;
      for (const auto& z : circle) inside = inside && member(kG2, z).state == Membership::In;
      if (inside) break;
      rho *= 0.5;
    }
    double mean = 0.0;
    for (const auto& z : circle) mean += exhaustion_value(kG2, z);
    CHECK(exhaustion_value(kG2, a) <= mean / kCircle + 1e-6);
  }
}

TEST_CASE("divergence probe on the radial sequence") {
  const auto report = divergence_probe(kG2, ComplexPoint{0.0, 0.0}, SequenceSpec{}, 20);
  REQUIRE(report.rows.size() == 20);
  for (const auto& row : report.rows) CHECK(std::abs(row.c_k - std::atanh(1.0 - std::ldexp(1.0, -row.k))) <= 1e-9);
  for (std::size_t k = 1; k < report.rows.size(); ++k) CHECK(report.rows[k].c_k >= report.rows[k - 1].c_k);
  CHECK(report.first_crossing[0] == 3);
  CHECK(report.first_crossing[1] == 5);
  CHECK(report.first_crossing[2] == 14);
  CHECK(report.rows[14].c_k > 5.0);
}

TEST_CASE("divergence probe on an escaping root and a constant sequence") {
  SequenceSpec escaping;
  escaping.kind = SequenceSpec::Kind::EscapingRoot;
  escaping.boundary_point = Complex(0.0, 1.0);
  escaping.frozen = 0.3;
  const Complex base_roots[] = {0.1, 0.3};
  const auto report = divergence_probe(kG2, symmetrize(base_roots), escaping, 16);
  for (std::size_t k = 1; k < report.rows.size(); ++k) CHECK(report.rows[k].c_k >= report.rows[k - 1].c_k - 1e-9);
  CHECK(report.first_crossing[2].has_value());

  SequenceSpec constant;
  constant.kind = SequenceSpec::Kind::Constant;
  constant.point = ComplexPoint{0.2, 0.01};
  const auto flat = divergence_probe(kG2, ComplexPoint{0.0, 0.0}, constant, 6);
  for (const auto& row : flat.rows) CHECK(row.c_k == flat.rows[0].c_k);
  for (const auto& first : flat.first_crossing) CHECK_FALSE(first.has_value());

  CHECK_THROWS_AS(divergence_probe(SymProduct(PlanarDomain::unit_disc(), 3), ComplexPoint{0.0, 0.0, 0.0},
                                   SequenceSpec{}, 3),
                  UnsupportedError);
  CHECK_THROWS_AS(divergence_probe(kG2, ComplexPoint{0.0, 0.0}, SequenceSpec{}, 40), ValidationError);
}
