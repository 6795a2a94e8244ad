#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "symprod/errors.hpp"
#include "symprod/sampling.hpp"
#include "symprod/sympoly.hpp"

using namespace symprod;

namespace {

std::vector<Complex> random_roots(Rng& rng, std::size_t n, double radius = 1.0) {
  std::vector<Complex> r(n);
  for (auto& x : r) x = uniform_in_disc(rng, 0.0, radius);
  return r;
}

}  // namespace

TEST_CASE("symmetrize small cases") {
  const Complex a[] = {0.0, 1.0};
  CHECK(symmetrize(a) == ComplexPoint{1.0, 0.0});
  const Complex b[] = {2.0, 3.0};
  CHECK(symmetrize(b) == ComplexPoint{5.0, 6.0});
  const Complex c[] = {1.0, 1.0, 1.0};
  CHECK(symmetrize(c) == ComplexPoint{3.0, 3.0, 1.0});
}

TEST_CASE("symmetrize matches the subset-sum oracle") {
  for (std::size_t n = 1; n <= 8; ++n) {
    Rng rng = derive_rng(11, n, 0);
    const auto r = random_roots(rng, n, 2.0);
    const auto z = symmetrize(r);
    const auto e = oracle::elementary_by_subsets(r);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(z[j] - e[j]) <= 1e-12 * std::max(1.0, std::abs(e[j])));
  }
}

TEST_CASE("symmetrize rejects empty and non-finite input") {
  CHECK_THROWS_AS(symmetrize(std::vector<Complex>{}), ValidationError);
  const Complex bad[] = {1.0, Complex(NAN, 0.0)};
  CHECK_THROWS_AS(symmetrize(bad), ValidationError);
  CHECK_THROWS_AS(ComplexPoint({Complex(INFINITY, 0.0)}), ValidationError);
}

TEST_CASE("symmetrize is bitwise permutation invariant") {
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng = derive_rng(12, 0, trial);
    const std::size_t n = 2 + trial % 7;
    auto r = random_roots(rng, n, 3.0);
    if (trial % 5 == 0) r[1] = Complex(-0.0, r[1].imag());
    const auto z = symmetrize(r);
    std::shuffle(r.begin(), r.end(), rng);
    CHECK(symmetrize(r) == z);
  }
}

TEST_CASE("monic_eval examples") {
  CHECK(monic_eval(ComplexPoint{1.0, 0.0}, 0.0) == Complex(0.0));
  CHECK(monic_eval(ComplexPoint{3.0, 1.0}, 1.0) == Complex(-1.0));
}

TEST_CASE("monic_eval vanishes at every root") {
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = derive_rng(13, 0, trial);
    const auto r = random_roots(rng, 2 + trial % 6);
    const auto z = symmetrize(r);
    for (const auto& x : r) CHECK(std::abs(monic_eval(z, x)) < 1e-10);
  }
}

TEST_CASE("monic_eval is affine in z for fixed mu") {
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng = derive_rng(14, 0, trial);
    const std::size_t n = 2 + trial % 5;
    const auto a = random_roots(rng, n, 2.0);
    const auto b = random_roots(rng, n, 2.0);
    const Complex mu = uniform_in_disc(rng, 0.0, 2.0);
    const double t = uniform01(rng);
    std::vector<Complex> mix(n);
    for (std::size_t j = 0; j < n; ++j) mix[j] = t * a[j] + (1.0 - t) * b[j];
    const Complex lhs = monic_eval(ComplexPoint(mix), mu);
    const Complex rhs = t * monic_eval(ComplexPoint(a), mu) + (1.0 - t) * monic_eval(ComplexPoint(b), mu);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("roots_of_point examples") {
  const auto r = roots_of_point(ComplexPoint{1.0, 0.0});
  std::vector<Complex> got(r.roots().begin(), r.roots().end());
  CHECK(oracle::multiset_distance(got, {0.0, 1.0}) < 1e-14);

  const Complex p(0.3, -0.7);
  const auto q = roots_of_point(ComplexPoint{0.0, p});
  std::vector<Complex> qs(q.roots().begin(), q.roots().end());
  const Complex s = std::sqrt(-p);
  CHECK(oracle::multiset_distance(qs, {s, -s}) < 1e-14);
}

TEST_CASE("roots_of_point agrees with companion eigenvalues") {
  for (std::size_t n = 2; n <= 12; ++n) {
    Rng rng = derive_rng(15, n, 0);
    const auto z = symmetrize(random_roots(rng, n, 1.5));
    const auto r = roots_of_point(z);
    std::vector<Complex> got(r.roots().begin(), r.roots().end());
    std::vector<Complex> zc(z.coords().begin(), z.coords().end());
    const auto ref = oracle::companion_roots(zc);
    if (n <= 8) CHECK(match_roots(got, ref).max_error < 1e-8);
  }
}

TEST_CASE("roots_of_point resolves a double root at zero") {
  const auto r = roots_of_point(ComplexPoint{0.0, 0.0});
  CHECK(std::abs(r[0]) < 1e-12);
  CHECK(std::abs(r[1]) < 1e-12);
  CHECK(r.collision_gap() < 1e-12);
}

TEST_CASE("roots_of_point reports failure with the best iterate") {
  RootSolverOptions opts;
  opts.max_iterations = 1;
  opts.tol_res = 0.0;
  const ComplexPoint z = symmetrize(std::vector<Complex>{0.1, 0.5, -0.3, Complex(0, 0.4)});
  try {
    (void)roots_of_point(z, opts);
    FAIL("expected RootSolveError");
  } catch (const RootSolveError& e) {
    CHECK(e.best_iterate().size() == 4);
    CHECK(e.residuals().size() == 4);
  }
}

TEST_CASE("round trip on random tuples with separated roots") {
  int cases = 0;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int i = 0; i < 200; ++i) {
      Rng rng = derive_rng(16, n, i);
      const auto r = random_roots(rng, n);
      if (RootMultiset(r).collision_gap() <= 1e-3) continue;
      const auto back = roots_of_point(symmetrize(r));
      CHECK(match_roots(back.roots(), r).max_error < 1e-8);
      ++cases;
    }
  }
  CHECK(cases > 1000);
}

TEST_CASE("match_roots examples") {
  const Complex a[] = {0.0, 1.0};
  const Complex b[] = {1.0, 0.0};
  const auto m = match_roots(a, b);
  CHECK(m.permutation == std::vector<std::size_t>{1, 0});
  CHECK(m.max_error == 0.0);

  const auto id = match_roots(a, a);
  CHECK(id.permutation == std::vector<std::size_t>{0, 1});
  CHECK(id.max_error == 0.0);

  const Complex c[] = {1.0 + 1e-9, Complex(0.0, 1e-9)};
  CHECK(match_roots(a, c).max_error <= 2e-9);
}

TEST_CASE("match_roots tie-break is the lexicographically first permutation") {
  const Complex a[] = {0.0, 0.0};
  const Complex b[] = {0.0, 0.0};
  CHECK(match_roots(a, b).permutation == std::vector<std::size_t>{0, 1});
}

TEST_CASE("match_roots equals the brute-force optimum") {
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng = derive_rng(17, 0, trial);
    const std::size_t n = 2 + trial % 5;
    const auto a = random_roots(rng, n);
    const auto b = random_roots(rng, n);
    CHECK(match_roots(a, b).max_error == doctest::Approx(oracle::multiset_distance(a, b)).epsilon(1e-15));
  }
}

TEST_CASE("match_roots limits") {
  std::vector<Complex> nine(9, 0.0);
  CHECK_THROWS_AS(match_roots(nine, nine), UnsupportedError);
  const Complex a[] = {0.0};
  const Complex b[] = {0.0, 1.0};
  CHECK_THROWS_AS(match_roots(a, b), ValidationError);
}

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6.0);
  CHECK(binomial(6, 0) == 1.0);
  CHECK(binomial(6, 7) == 0.0);
}

TEST_CASE("collision gap") {
  CHECK(RootMultiset({0.0, 1.0, Complex(0.0, 0.5)}).collision_gap() == doctest::Approx(0.5));
  CHECK(RootMultiset({2.0}).collision_gap() == 0.0);
}
