#pragma once

// Seeded sampling helpers.  Every sample draws from its own generator derived
// from (seed, stream, index), so batch results do not depend on evaluation
// order or on how a batch is split across threads.

#include <cstdint>
#include <random>

#include "symprod/domains.hpp"
#include "symprod/symgeo.hpp"

namespace symprod {

using Rng = std::mt19937_64;

Rng derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

double uniform01(Rng& rng);

/// Uniform in the open disc D(center, radius).
Complex uniform_in_disc(Rng& rng, Complex center = 0.0, double radius = 1.0);

/// A point of the domain at distance more than `margin` from its boundary.
/// Unbounded domains are sampled in the disc of radius `reach` around the
/// origin.
Complex sample_in_domain(Rng& rng, const PlanarDomain& domain, double margin = 0.0, double reach = 4.0);

/// offset + sum t_i basis_i with t uniform in the polydisc of radius `radius`.
ComplexPoint sample_on(const AffineSubspace& space, Rng& rng, double radius = 10.0);

}  // namespace symprod
