#pragma once

// Planar domains D in C and the one-variable holomorphic gadgets built on
// them: disc peak functions, separating functions and negative exhaustions.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symprod/sympoly.hpp"

namespace symprod {

inline constexpr double kDefaultBoundaryTolerance = 1e-9;

enum class DomainKind { UnitDisc, Disc, ComplementFinite, DiscMinusFinite };

std::string to_string(DomainKind kind);

/// One of four domain shapes with exact membership.  Construct through the
/// named factories; they validate the invariants.
class PlanarDomain {
 public:
  static PlanarDomain unit_disc();
  static PlanarDomain disc(Complex center, double radius);
  /// C minus a finite set of distinct points (possibly empty, i.e. C).
  static PlanarDomain complement_finite(std::vector<Complex> punctures);
  /// Open disc minus distinct points lying strictly inside it.
  static PlanarDomain disc_minus_finite(Complex center, double radius, std::vector<Complex> punctures);

  DomainKind kind() const noexcept { return kind_; }
  /// Center and radius of the ambient disc (unit disc for UnitDisc).  Only
  /// meaningful when bounded().
  Complex center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  std::span<const Complex> punctures() const noexcept { return punctures_; }

  bool bounded() const noexcept { return kind_ != DomainKind::ComplementFinite; }
  bool has_punctures() const noexcept { return !punctures_.empty(); }

  /// sup |lambda| over the closure; requires bounded().
  double max_modulus() const;

  friend bool operator==(const PlanarDomain&, const PlanarDomain&) = default;

 private:
  PlanarDomain(DomainKind kind, Complex center, double radius, std::vector<Complex> punctures);

  DomainKind kind_;
  Complex center_;
  double radius_;
  std::vector<Complex> punctures_;
};

enum class Membership { In, Out, Boundary };

std::string to_string(Membership state);

struct MembershipVerdict {
  Membership state;
  /// Signed Euclidean distance to the boundary, negative inside.
  double margin;
};

/// Exact geometric membership.  Boundary within `boundary_tol` of the
/// boundary; a point lying exactly on a puncture is Out.
MembershipVerdict contains(const PlanarDomain& domain, Complex lambda,
                           double boundary_tol = kDefaultBoundaryTolerance);

/// #(C \ D): a count for ComplementFinite, infinite otherwise.
struct ComplementCardinality {
  std::optional<std::size_t> count;  // nullopt means infinite

  bool infinite() const noexcept { return !count.has_value(); }
  /// True when #(C \ D) >= k.
  bool at_least(std::size_t k) const noexcept { return infinite() || *count >= k; }
};

ComplementCardinality complement_cardinality(const PlanarDomain& domain);

/// A linear fractional map lambda -> (a lambda + b) / (c lambda + d).  Every
/// one-variable function handle the library needs (identity, constants,
/// affine peak functions, disc automorphisms) is of this form, and the form
/// is closed under composition.  A degenerate matrix encodes a constant.
class PlanarMap {
 public:
  PlanarMap(std::string tag, Complex a, Complex b, Complex c, Complex d);

  static PlanarMap identity();
  static PlanarMap constant(Complex value);
  /// The automorphism of the disc D(center, radius) onto the unit disc that
  /// sends `zero` to 0, post-rotated by `rotation` (|rotation| = 1).
  static PlanarMap disc_automorphism(Complex center, double radius, Complex zero, Complex rotation = 1.0);

  Complex operator()(Complex lambda) const;
  /// Whether lambda is away from the pole (|c lambda + d| > tiny).
  bool defined_at(Complex lambda) const;

  /// (*this)(inner(lambda)).
  PlanarMap compose(const PlanarMap& inner) const;

  const std::string& tag() const noexcept { return tag_; }
  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }

  /// Stated bound on |f| over the domain it was built for, if any.
  std::optional<double> sup_bound;

 private:
  std::string tag_;
  Complex a_, b_, c_, d_;
};

/// f(lambda) = (1 + lambda conj(zeta)) / 2 on the closed unit disc, peaking
/// at zeta.  Requires |zeta| = 1 within 1e-12.
PlanarMap disc_peak_function(Complex zeta);

/// Bounded holomorphic h on a disc-kind domain with h(lambda1) = 0 and h
/// nonzero on `avoid`.  Built as the automorphism of the ambient disc
/// vanishing at lambda1; sup |h| <= 1.
PlanarMap c_separating_function(const PlanarDomain& domain, Complex lambda1, std::span<const Complex> avoid);

/// u(lambda) = |lambda - c| / r - 1 for the ambient disc of a bounded domain.
/// Negative and subharmonic on the disc, tends to 0 at its boundary circle.
class NegExhaustion {
 public:
  NegExhaustion(Complex center, double radius) : center_(center), radius_(radius) {}
  double operator()(Complex lambda) const { return std::abs(lambda - center_) / radius_ - 1.0; }

 private:
  Complex center_;
  double radius_;
};

/// Throws UnsupportedError for the unbounded kind.
NegExhaustion neg_exhaustion(const PlanarDomain& domain);

}  // namespace symprod
