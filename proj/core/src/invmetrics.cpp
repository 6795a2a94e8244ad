#include "symprod/invmetrics.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "symprod/errors.hpp"
#include "metrics_detail.hpp"

namespace symprod {

namespace detail {

bool lex_less(Complex a, Complex b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); }

bool point_less(const ComplexPoint& a, const ComplexPoint& b) {
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(), b.coords().end(),
                                      lex_less);
}

void require_inside(const SymProduct& s, const ComplexPoint& z, const char* what) {
  if (z.dim() != s.n()) throw ValidationError(std::string(what) + ": point dimension differs from n");
  if (member(s, z).state != Membership::In)
    throw ValidationError(std::string(what) + ": point does not lie in the symmetric product");
}

bool is_disc(const PlanarDomain& d) { return d.kind() == DomainKind::UnitDisc || d.kind() == DomainKind::Disc; }

}  // namespace detail

using detail::lex_less;

double poincare(Complex a, Complex b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (!(ma < 1.0) || !(mb < 1.0)) throw ValidationError("poincare: arguments must lie in the open unit disc");
  const double num = std::abs(a - b);
  if (num == 0.0) return 0.0;
  const double den = std::abs(1.0 - std::conj(a) * b);
  const double x = num / den;
  // 1 - x^2 = (1 - |a|^2)(1 - |b|^2) / |1 - conj(a) b|^2 keeps precision near the circle.
  const double one_minus_x2 = ((1.0 - ma) * (1.0 + ma)) * ((1.0 - mb) * (1.0 + mb)) / (den * den);
  const double one_minus_x = one_minus_x2 / (1.0 + x);
  return 0.5 * std::log1p(2.0 * x / one_minus_x);
}

double disc_distance(const PlanarDomain& disc, Complex a, Complex b) {
  if (!detail::is_disc(disc)) throw UnsupportedError("disc_distance: closed form only for disc domains");
  return poincare((a - disc.center()) / disc.radius(), (b - disc.center()) / disc.radius());
}

Complex phi_omega(Complex omega, Complex s, Complex p) {
  const Complex den = 2.0 - omega * s;
  if (!(std::abs(den) > 1e-12)) throw ValidationError("phi_omega: too close to the pole 2 - omega s = 0");
  return (2.0 * omega * p - s) / den;
}

std::string to_string(LowerCertificate::Kind kind) {
  switch (kind) {
    case LowerCertificate::Kind::Trivial: return "trivial";
    case LowerCertificate::Kind::Coordinate: return "coordinate";
    case LowerCertificate::Kind::PhiOmega: return "phi_omega";
  }
  return "unknown";
}

std::string to_string(UpperCertificate::Kind kind) {
  switch (kind) {
    case UpperCertificate::Kind::None: return "none";
    case UpperCertificate::Kind::Identical: return "identical";
    case UpperCertificate::Kind::Permutation: return "permutation";
    case UpperCertificate::Kind::Disc: return "disc";
  }
  return "unknown";
}

ComplexPoint DiscCertificate::operator()(Complex zeta) const {
  std::vector<Complex> x(coefficients.size());
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    Complex v = 0.0;
    for (auto it = coefficients[j].rbegin(); it != coefficients[j].rend(); ++it) v = v * zeta + *it;
    x[j] = v;
  }
  return ComplexPoint(std::move(x));
}

namespace {

constexpr double kMaxZeroModulus = 0.999;

// Disc maps pushed forward before the competitors are applied: the
// normalization of the ambient disc and the automorphisms vanishing at the
// roots of either point.
std::vector<PlanarMap> competitor_maps(const PlanarDomain& base, const ComplexPoint& z, const ComplexPoint& w) {
  std::vector<Complex> zeros{base.center()};
  for (const auto* p : {&z, &w}) {
    const auto r = roots_of_point(*p);
    zeros.insert(zeros.end(), r.roots().begin(), r.roots().end());
  }
  std::sort(zeros.begin() + 1, zeros.end(), lex_less);
  zeros.erase(std::unique(zeros.begin() + 1, zeros.end()), zeros.end());

  std::vector<PlanarMap> maps;
  for (const auto& a : zeros) {
    // Automorphisms vanishing close to the circle are too ill-conditioned
    // for the Poincare distance of the images.
    if (std::abs(a - base.center()) <= kMaxZeroModulus * base.radius())
      maps.push_back(PlanarMap::disc_automorphism(base.center(), base.radius(), a));
  }
  return maps;
}

double phi_distance(double theta, const ComplexPoint& zf, const ComplexPoint& wf) {
  const Complex omega = std::polar(1.0, theta);
  const Complex a = phi_omega(omega, zf[0], zf[1]);
  const Complex b = phi_omega(omega, wf[0], wf[1]);
  // Rounding can place images of points near the boundary on the circle.
  if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0)) return -1.0;
  return poincare(a, b);
}

}  // namespace

DistanceBound carath_lower(const SymProduct& s, const ComplexPoint& z_in, const ComplexPoint& w_in,
                           const CaratheodoryOptions& options) {
  detail::require_inside(s, z_in, "carath_lower");
  detail::require_inside(s, w_in, "carath_lower");
  const bool swap = detail::point_less(w_in, z_in);
  const ComplexPoint& z = swap ? w_in : z_in;
  const ComplexPoint& w = swap ? z_in : w_in;

  DistanceBound out;
  if (z == w || !s.base().bounded()) return out;

  const std::size_t n = s.n();
  auto& best = out.lower_cert;
  auto consider = [&best](double value, LowerCertificate candidate) {
    if (value > best.value) {
      candidate.value = value;
      best = std::move(candidate);
    }
  };

  for (const auto& f : competitor_maps(s.base(), z, w)) {
    const ComplexPoint zf = push_forward(f, z);
    const ComplexPoint wf = push_forward(f, w);

    for (std::size_t j = 1; j <= n; ++j) {
      const double scale = binomial(static_cast<int>(n), static_cast<int>(j));
      const Complex a = zf[j - 1] / scale;
      const Complex b = wf[j - 1] / scale;
      if (std::abs(a) < 1.0 && std::abs(b) < 1.0)
        consider(poincare(a, b), {LowerCertificate::Kind::Coordinate, f, j, 1.0, 0.0});
    }

    if (n != 2 || options.omega_grid == 0) continue;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(options.omega_grid);
    double grid_best = -1.0;
    double grid_theta = 0.0;
    for (std::size_t i = 0; i < options.omega_grid; ++i) {
      const double theta = step * static_cast<double>(i);
      const double v = phi_distance(theta, zf, wf);
      if (v > grid_best) {
        grid_best = v;
        grid_theta = theta;
      }
    }
    double theta = grid_theta;
    double value = grid_best;
    if (options.refine_omega) {
      const auto [t, neg] = boost::math::tools::brent_find_minima(
          [&](double th) { return -phi_distance(th, zf, wf); }, grid_theta - step, grid_theta + step, 50);
      if (-neg > value) {
        value = -neg;
        theta = t;
      }
    }
    consider(value, {LowerCertificate::Kind::PhiOmega, f, 0, std::polar(1.0, theta), 0.0});
  }
  out.lower = best.value;
  return out;
}

DistanceBound lempert_upper_permutation(const SymProduct& s, const ComplexPoint& z_in, const ComplexPoint& w_in) {
  if (!detail::is_disc(s.base())) throw UnsupportedError("lempert_upper_permutation: needs a disc base");
  detail::require_inside(s, z_in, "lempert_upper_permutation");
  detail::require_inside(s, w_in, "lempert_upper_permutation");
  const bool swap = detail::point_less(w_in, z_in);
  const ComplexPoint& z = swap ? w_in : z_in;
  const ComplexPoint& w = swap ? z_in : w_in;

  DistanceBound out;
  if (z == w) {
    out.upper = 0.0;
    out.upper_cert.kind = UpperCertificate::Kind::Identical;
    return out;
  }
  const auto match = detail::permutation_match(s.base(), roots_of_point(z), roots_of_point(w));
  out.upper = match.distance;
  out.upper_cert.kind = UpperCertificate::Kind::Permutation;
  out.upper_cert.permutation = match.permutation;
  return out;
}

namespace detail {

PermutationMatch permutation_match(const PlanarDomain& disc, const RootMultiset& a, const RootMultiset& b) {
  const std::size_t n = a.size();
  if (n > 8) throw UnsupportedError("permutation bound: exhaustive matching supports n <= 8");
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = disc_distance(disc, a[i], b[j]);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  PermutationMatch best{perm, std::numeric_limits<double>::infinity(),
                        std::vector<Complex>(a.roots().begin(), a.roots().end()), {}};
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < n && worst < best.distance; ++i) worst = std::max(worst, dist[i * n + perm[i]]);
    if (worst < best.distance) {
      best.distance = worst;
      best.permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  best.targets.resize(n);
  for (std::size_t i = 0; i < n; ++i) best.targets[i] = b[best.permutation[i]];
  return best;
}

}  // namespace detail

double projection_radius(const SymProduct& s, Complex mu) {
  return std::pow(std::abs(mu) + s.base().max_modulus(), static_cast<double>(s.n()));
}

double kobayashi_lower_projection(const SymProduct& s, const ComplexPoint& z_in, const ComplexPoint& w_in,
                                  const ComplexPoint& boundary_point) {
  if (!s.base().bounded()) throw UnsupportedError("kobayashi_lower_projection: needs a bounded base");
  detail::require_inside(s, z_in, "kobayashi_lower_projection");
  detail::require_inside(s, w_in, "kobayashi_lower_projection");
  const bool swap = detail::point_less(w_in, z_in);
  const ComplexPoint& z = swap ? w_in : z_in;
  const ComplexPoint& w = swap ? z_in : w_in;
  if (z == w) return 0.0;

  // On S_n(D) the functional equals prod_j (mu - lambda_j): it omits 0 and
  // stays inside the disc of radius (|mu| + M)^n.
  const Hyperplane h = separating_hyperplane(s, boundary_point);
  const double radius = projection_radius(s, h.witness());
  return poincare(h(z) / radius, h(w) / radius);
}

double exhaustion_value(const SymProduct& s, const ComplexPoint& z) {
  const NegExhaustion u = neg_exhaustion(s.base());
  if (z.dim() != s.n()) throw ValidationError("exhaustion_value: point dimension differs from n");
  const auto roots = roots_of_point(z);
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& r : roots.roots()) v = std::max(v, u(r));
  if (!(v < 0.0)) throw ValidationError("exhaustion_value: point does not lie in the symmetric product");
  return v;
}

ComplexPoint SequenceSpec::at(int k, const PlanarDomain& base) const {
  const double t = 1.0 - std::ldexp(1.0, -k);
  switch (kind) {
    case Kind::RadialCoordinate: return ComplexPoint{0.0, t * direction};
    case Kind::EscapingRoot: {
      const Complex c = base.bounded() ? base.center() : Complex(0.0);
      const Complex roots[] = {c + t * (boundary_point - c), frozen};
      return symmetrize(roots);
    }
    case Kind::Constant:
      if (!point) throw ValidationError("SequenceSpec: constant sequence without a point");
      return *point;
  }
  throw ValidationError("SequenceSpec: unknown kind");
}

DivergenceReport divergence_probe(const SymProduct& s, const ComplexPoint& base_point, const SequenceSpec& sequence,
                                  int K) {
  if (s.n() != 2) throw UnsupportedError("divergence_probe: quantitative bounds need n = 2");
  if (!s.base().bounded()) throw UnsupportedError("divergence_probe: needs a disc-kind base");
  if (K < 1) throw ValidationError("divergence_probe: K must be positive");
  detail::require_inside(s, base_point, "divergence_probe");

  const auto& d = s.base();
  const auto base_roots = roots_of_point(base_point);
  const Complex anchor = *std::min_element(base_roots.roots().begin(), base_roots.roots().end(), lex_less);
  const SymProduct bidisc(PlanarDomain::unit_disc(), 2);

  DivergenceReport report;
  for (int k = 1; k <= K; ++k) {
    const ComplexPoint w = sequence.at(k, d);
    if (w.dim() != 2 || member(s, w).state != Membership::In)
      throw ValidationError("divergence_probe: sequence leaves the domain at k = " + std::to_string(k));

    const auto roots = roots_of_point(w);
    Complex escaping = roots[0];
    double reach = -1.0;
    for (const auto& r : roots.roots()) {
      const double m = std::abs(r - d.center());
      if (m > reach || (m == reach && lex_less(r, escaping))) {
        reach = m;
        escaping = r;
      }
    }
    const Complex image = PlanarMap::disc_automorphism(d.center(), d.radius(), anchor)(escaping);
    const Complex rotation = (std::abs(image) > 0.0) ? std::conj(image) / std::abs(image) : Complex(1.0);
    const PlanarMap f = PlanarMap::disc_automorphism(d.center(), d.radius(), anchor, rotation);

    const auto bound = carath_lower(bidisc, push_forward(f, base_point), push_forward(f, w));
    DivergenceRow row{k, bound.lower, {}, bound.lower_cert};
    for (std::size_t t = 0; t < DivergenceReport::kThresholds.size(); ++t) {
      row.crossed[t] = row.c_k > DivergenceReport::kThresholds[t];
      if (row.crossed[t] && !report.first_crossing[t]) report.first_crossing[t] = k;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace symprod
