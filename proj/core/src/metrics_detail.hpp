#pragma once

#include <vector>

#include "symprod/domains.hpp"
#include "symprod/symgeo.hpp"
#include "symprod/sympoly.hpp"

namespace symprod::detail {

bool lex_less(Complex a, Complex b);
bool point_less(const ComplexPoint& a, const ComplexPoint& b);
bool is_disc(const PlanarDomain& d);
void require_inside(const SymProduct& s, const ComplexPoint& z, const char* what);

struct PermutationMatch {
  std::vector<std::size_t> permutation;
  double distance;
  std::vector<Complex> sources;
  std::vector<Complex> targets;  // targets[i] is matched with sources[i]
};

/// Root matching minimizing the largest disc distance; lexicographic ties.
PermutationMatch permutation_match(const PlanarDomain& disc, const RootMultiset& a, const RootMultiset& b);

}  // namespace symprod::detail
