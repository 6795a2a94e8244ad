#include "symprod/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symprod/errors.hpp"

namespace symprod {

namespace {

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void validate_punctures(const std::vector<Complex>& punctures) {
  for (std::size_t i = 0; i < punctures.size(); ++i) {
    if (!is_finite(punctures[i])) throw ValidationError("PlanarDomain: non-finite puncture");
    for (std::size_t j = i + 1; j < punctures.size(); ++j) {
      if (punctures[i] == punctures[j]) throw ValidationError("PlanarDomain: punctures must be pairwise distinct");
    }
  }
}

double nearest_puncture(std::span<const Complex> punctures, Complex lambda) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& mu : punctures) d = std::min(d, std::abs(lambda - mu));
  return d;
}

}  // namespace

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::UnitDisc: return "unit_disc";
    case DomainKind::Disc: return "disc";
    case DomainKind::ComplementFinite: return "complement_finite";
    case DomainKind::DiscMinusFinite: return "disc_minus_finite";
  }
  return "unknown";
}

std::string to_string(Membership state) {
  switch (state) {
    case Membership::In: return "IN";
    case Membership::Out: return "OUT";
    case Membership::Boundary: return "BOUNDARY";
  }
  return "unknown";
}

PlanarDomain::PlanarDomain(DomainKind kind, Complex center, double radius, std::vector<Complex> punctures)
    : kind_(kind), center_(center), radius_(radius), punctures_(std::move(punctures)) {}

PlanarDomain PlanarDomain::unit_disc() { return PlanarDomain(DomainKind::UnitDisc, 0.0, 1.0, {}); }

PlanarDomain PlanarDomain::disc(Complex center, double radius) {
  if (!is_finite(center) || !std::isfinite(radius) || !(radius > 0.0))
    throw ValidationError("PlanarDomain: disc needs a finite center and a positive radius");
  return PlanarDomain(DomainKind::Disc, center, radius, {});
}

PlanarDomain PlanarDomain::complement_finite(std::vector<Complex> punctures) {
  validate_punctures(punctures);
  return PlanarDomain(DomainKind::ComplementFinite, 0.0, 0.0, std::move(punctures));
}

PlanarDomain PlanarDomain::disc_minus_finite(Complex center, double radius, std::vector<Complex> punctures) {
  if (!is_finite(center) || !std::isfinite(radius) || !(radius > 0.0))
    throw ValidationError("PlanarDomain: disc needs a finite center and a positive radius");
  validate_punctures(punctures);
  for (const auto& mu : punctures) {
    if (!(std::abs(mu - center) < radius))
      throw ValidationError("PlanarDomain: punctures must lie strictly inside the disc");
  }
  return PlanarDomain(DomainKind::DiscMinusFinite, center, radius, std::move(punctures));
}

double PlanarDomain::max_modulus() const {
  if (!bounded()) throw UnsupportedError("max_modulus: domain is unbounded");
  return std::abs(center_) + radius_;
}

MembershipVerdict contains(const PlanarDomain& domain, Complex lambda, double boundary_tol) {
  if (!is_finite(lambda)) throw ValidationError("contains: non-finite point");

  double margin = 0.0;
  bool on_puncture = false;
  switch (domain.kind()) {
    case DomainKind::UnitDisc:
    case DomainKind::Disc:
      margin = std::abs(lambda - domain.center()) - domain.radius();
      break;
    case DomainKind::ComplementFinite: {
      const double d = nearest_puncture(domain.punctures(), lambda);
      on_puncture = (d == 0.0);
      margin = -d;
      break;
    }
    case DomainKind::DiscMinusFinite: {
      const double outer = std::abs(lambda - domain.center()) - domain.radius();
      if (outer > 0.0) {
        margin = outer;
      } else {
        const double d = nearest_puncture(domain.punctures(), lambda);
        on_puncture = (d == 0.0);
        margin = std::max(outer, -d);
      }
      break;
    }
  }

  if (on_puncture) return {Membership::Out, 0.0};
  if (margin > boundary_tol) return {Membership::Out, margin};
  if (margin < -boundary_tol) return {Membership::In, margin};
  return {Membership::Boundary, margin};
}

ComplementCardinality complement_cardinality(const PlanarDomain& domain) {
  if (domain.kind() == DomainKind::ComplementFinite) return {domain.punctures().size()};
  return {std::nullopt};
}

PlanarMap::PlanarMap(std::string tag, Complex a, Complex b, Complex c, Complex d)
    : tag_(std::move(tag)), a_(a), b_(b), c_(c), d_(d) {
  if (!is_finite(a) || !is_finite(b) || !is_finite(c) || !is_finite(d))
    throw ValidationError("PlanarMap: non-finite coefficient");
  if (c == Complex(0.0) && d == Complex(0.0)) throw ValidationError("PlanarMap: denominator vanishes identically");
}

PlanarMap PlanarMap::identity() { return PlanarMap("identity", 1.0, 0.0, 0.0, 1.0); }

PlanarMap PlanarMap::constant(Complex value) { return PlanarMap("constant", 0.0, value, 0.0, 1.0); }

PlanarMap PlanarMap::disc_automorphism(Complex center, double radius, Complex zero, Complex rotation) {
  const Complex alpha = (zero - center) / radius;
  if (!(std::abs(alpha) < 1.0)) throw ValidationError("disc_automorphism: zero must lie inside the disc");
  if (std::abs(std::abs(rotation) - 1.0) > 1e-12) throw ValidationError("disc_automorphism: rotation must be unimodular");
  // rotation * ((l - c)/r - alpha) / (1 - conj(alpha) (l - c)/r)
  PlanarMap m("disc_automorphism", rotation, -rotation * zero, -std::conj(alpha), radius + std::conj(alpha) * center);
  m.sup_bound = 1.0;
  return m;
}

Complex PlanarMap::operator()(Complex lambda) const {
  if (c_ == Complex(0.0)) return (a_ * lambda + b_) / d_;
  return (a_ * lambda + b_) / (c_ * lambda + d_);
}

bool PlanarMap::defined_at(Complex lambda) const {
  const Complex den = c_ * lambda + d_;
  return std::abs(den) > 1e-14 * (std::abs(c_) * std::abs(lambda) + std::abs(d_));
}

PlanarMap PlanarMap::compose(const PlanarMap& inner) const {
  return PlanarMap("composition", a_ * inner.a_ + b_ * inner.c_, a_ * inner.b_ + b_ * inner.d_,
                   c_ * inner.a_ + d_ * inner.c_, c_ * inner.b_ + d_ * inner.d_);
}

PlanarMap disc_peak_function(Complex zeta) {
  if (!is_finite(zeta) || std::abs(std::abs(zeta) - 1.0) > 1e-12)
    throw ValidationError("disc_peak_function: peak point must lie on the unit circle");
  PlanarMap f("disc_peak", std::conj(zeta) / 2.0, 0.5, 0.0, 1.0);
  f.sup_bound = 1.0;
  return f;
}

PlanarMap c_separating_function(const PlanarDomain& domain, Complex lambda1, std::span<const Complex> avoid) {
  if (!domain.bounded()) throw UnsupportedError("c_separating_function: needs a disc-kind domain");
  if (!(contains(domain, lambda1, 0.0).state == Membership::In))
    throw ValidationError("c_separating_function: lambda1 must lie in the domain");
  for (const auto& x : avoid) {
    // Punctures are admissible: h extends holomorphically across them.
    if (!(std::abs(x - domain.center()) < domain.radius()))
      throw ValidationError("c_separating_function: avoided points must lie in the ambient disc");
    if (x == lambda1) throw ValidationError("c_separating_function: lambda1 belongs to the avoided set");
  }
  auto h = PlanarMap::disc_automorphism(domain.center(), domain.radius(), lambda1);
  for (const auto& x : avoid) {
    if (h(x) == Complex(0.0)) throw NumericalError("c_separating_function: separating value underflowed to 0");
  }
  return h;
}

NegExhaustion neg_exhaustion(const PlanarDomain& domain) {
  if (domain.kind() != DomainKind::UnitDisc && domain.kind() != DomainKind::Disc)
    throw UnsupportedError("neg_exhaustion: needs a disc (the punctured and unbounded kinds are not hyperconvex)");
  return NegExhaustion(domain.center(), domain.radius());
}

}  // namespace symprod
