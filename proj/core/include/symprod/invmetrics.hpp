#pragma once

// Certified bounds for the invariant pseudodistances of S_n(D):
//
//   carath_lower <= c <= k <= l <= lempert upper bounds.
//
// Lower bounds come from explicit holomorphic competitors into the unit disc,
// upper bounds from explicit analytic discs.  Each bound carries the object
// that certifies it.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "symprod/domains.hpp"
#include "symprod/symgeo.hpp"
#include "symprod/sympoly.hpp"

namespace symprod {

/// Poincare distance atanh |(a - b) / (1 - conj(a) b)| on the unit disc.
/// Throws ValidationError unless |a|, |b| < 1.
double poincare(Complex a, Complex b);

/// Hyperbolic distance of a disc-kind domain (UnitDisc or Disc).
double disc_distance(const PlanarDomain& disc, Complex a, Complex b);

/// (2 omega p - s) / (2 - omega s), a holomorphic map of the symmetrized
/// bidisc into the unit disc for |omega| = 1.  Throws ValidationError within
/// 1e-12 of the pole.
Complex phi_omega(Complex omega, Complex s, Complex p);

struct LowerCertificate {
  enum class Kind { Trivial, Coordinate, PhiOmega };
  Kind kind = Kind::Trivial;
  /// Planar map pushed forward before the competitor is applied.
  std::optional<PlanarMap> map;
  /// Coordinate competitor: sigma_j / C(n, j) with j = coordinate (1-based).
  std::size_t coordinate = 0;
  /// Phi_omega competitor.
  Complex omega = 1.0;
  double value = 0.0;
};

std::string to_string(LowerCertificate::Kind kind);

/// An analytic disc f(zeta) = sum_k coefficients[j][k] zeta^k in symmetric
/// coordinates with f(0) = z and f(sigma) = w.
struct DiscCertificate {
  std::vector<std::vector<Complex>> coefficients;
  double sigma = 1.0;
  /// Smallest distance from a root of f(zeta) to the boundary of D over the
  /// boundary samples |zeta| = 1.
  double boundary_margin = 0.0;

  ComplexPoint operator()(Complex zeta) const;
};

struct UpperCertificate {
  enum class Kind { None, Identical, Permutation, Disc };
  Kind kind = Kind::None;
  std::vector<std::size_t> permutation;
  std::optional<DiscCertificate> disc;
  std::string diagnostic;
};

std::string to_string(UpperCertificate::Kind kind);

struct DistanceBound {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  LowerCertificate lower_cert;
  UpperCertificate upper_cert;
};

struct CaratheodoryOptions {
  std::size_t omega_grid = 720;
  /// Polish the best grid angle by a bracketed one-dimensional search.
  bool refine_omega = true;
};

/// Lower bound for the Caratheodory pseudodistance: the best value of
/// p(F(z), F(w)) over a finite family of competitors F.  Both points must be
/// in S_n(D).  For punctured planes the family is empty and the bound is 0.
DistanceBound carath_lower(const SymProduct& s, const ComplexPoint& z, const ComplexPoint& w,
                           const CaratheodoryOptions& options = {});

/// Upper bound min over root matchings of the largest disc distance between
/// matched roots.  Disc bases only.
DistanceBound lempert_upper_permutation(const SymProduct& s, const ComplexPoint& z, const ComplexPoint& w);

struct DiscSearchOptions {
  int degree = 3;
  int boundary_samples = 256;
  double feasibility_margin = 1e-5;
  int multistarts = 16;
  /// Total objective evaluations across all starts.
  std::size_t budget = 4000;
  std::uint64_t seed = 0;
};

/// Upper bound for the Lempert function from a searched polynomial analytic
/// disc.  For disc bases the permutation disc competes as well, so the
/// result never exceeds lempert_upper_permutation.  upper = +inf when no
/// feasible disc was found.
DistanceBound lempert_upper_disc_search(const SymProduct& s, const ComplexPoint& z, const ComplexPoint& w,
                                        const DiscSearchOptions& options = {});

/// Lower bound for the Kobayashi pseudodistance from the linear functional
/// of the hyperplane separating `boundary_point`: it maps S_n(D) into a disc
/// of radius (|mu| + M)^n, M = sup |lambda| over D.
double kobayashi_lower_projection(const SymProduct& s, const ComplexPoint& z, const ComplexPoint& w,
                                  const ComplexPoint& boundary_point);

/// Radius of the disc enclosing the image of S_n(D) under the separating
/// functional with witness mu.
double projection_radius(const SymProduct& s, Complex mu);

/// v(z) = max_j u(root_j) with u the negative exhaustion of the disc base.
double exhaustion_value(const SymProduct& s, const ComplexPoint& z);

/// A sequence of points w^1, w^2, ... of S_2(D).
struct SequenceSpec {
  enum class Kind {
    /// (0, (1 - 2^-k) direction).
    RadialCoordinate,
    /// pi_2(center + (1 - 2^-k) (boundary_point - center), frozen).
    EscapingRoot,
    /// The fixed point `point` for every k.
    Constant,
  };
  Kind kind = Kind::RadialCoordinate;
  Complex direction = 1.0;
  Complex boundary_point = 1.0;
  Complex frozen = 0.0;
  std::optional<ComplexPoint> point;

  ComplexPoint at(int k, const PlanarDomain& base) const;
};

struct DivergenceRow {
  int k = 0;
  double c_k = 0.0;
  std::array<bool, 3> crossed{};
  LowerCertificate certificate;
};

struct DivergenceReport {
  static constexpr std::array<double, 3> kThresholds{1.0, 2.0, 5.0};
  std::vector<DivergenceRow> rows;
  /// First k with c_k above each threshold.
  std::array<std::optional<int>, 3> first_crossing{};
};

/// For k = 1..K pushes base_point and w^k through a disc map vanishing at a
/// root of base_point that rotates the escaping root of w^k onto the positive
/// axis, and records the Caratheodory lower bound between the images.
DivergenceReport divergence_probe(const SymProduct& s, const ComplexPoint& base_point, const SequenceSpec& sequence,
                                  int K);

}  // namespace symprod
