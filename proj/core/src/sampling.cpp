#include "symprod/sampling.hpp"

#include <cmath>
#include <numbers>

#include "symprod/errors.hpp"

namespace symprod {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index));
}

double uniform01(Rng& rng) { return std::generate_canonical<double, 53>(rng); }

Complex uniform_in_disc(Rng& rng, Complex center, double radius) {
  const double r = radius * std::sqrt(uniform01(rng));
  const double theta = 2.0 * std::numbers::pi * uniform01(rng);
  return center + std::polar(r, theta);
}

Complex sample_in_domain(Rng& rng, const PlanarDomain& domain, double margin, double reach) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Complex x = domain.bounded() ? uniform_in_disc(rng, domain.center(), domain.radius())
                                       : uniform_in_disc(rng, 0.0, reach);
    if (contains(domain, x, 0.0).margin < -margin) return x;
  }
  throw NumericalError("sample_in_domain: rejection sampling found no admissible point");
}

ComplexPoint sample_on(const AffineSubspace& space, Rng& rng, double radius) {
  std::vector<Complex> t(space.dimension());
  for (auto& ti : t) ti = uniform_in_disc(rng, 0.0, radius);
  return space.at(t);
}

}  // namespace symprod
