#include "symprod/peaks.hpp"

#include <algorithm>
#include <cmath>

#include "symprod/errors.hpp"
#include "symprod/invmetrics.hpp"
#include "symprod/sampling.hpp"

namespace symprod {

PointFunction g2_boundary_peak(Complex b) {
  if (!(std::abs(b) <= 1.0 + 1e-12)) throw ValidationError("g2_boundary_peak: need |b| <= 1");
  if (!(std::abs(1.0 - b) > 1e-12)) throw ValidationError("g2_boundary_peak: pi_2(1, 1) is the pole of Phi_1");
  const Complex tau = phi_omega(1.0, 1.0 + b, b);
  const Complex unit = tau / std::abs(tau);
  return {"g2_boundary_peak", {b, unit}, [unit](const ComplexPoint& z) {
            if (z.dim() != 2) throw ValidationError("g2_boundary_peak: expects a point of C^2");
            return (1.0 + std::conj(unit) * phi_omega(1.0, z[0], z[1])) / 2.0;
          }};
}

PeakCandidate symmetric_peak(const PlanarDomain& domain, Complex z1, Complex z2) {
  if (!domain.bounded()) throw ValidationError("symmetric_peak: needs a disc-kind domain");
  const Complex zeta = (z1 - domain.center()) / domain.radius();
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
    throw ValidationError("symmetric_peak: z1 is not a peak point (it must lie on the outer circle)");
  if (std::abs(z2 - domain.center()) > domain.radius() * (1.0 + 1e-12))
    throw ValidationError("symmetric_peak: z2 must lie in the closure of the domain");

  const PlanarMap normalize("normalize", 1.0 / domain.radius(), -domain.center() / domain.radius(), 0.0, 1.0);
  PlanarMap f = disc_peak_function(zeta / std::abs(zeta)).compose(normalize);
  f.sup_bound = 1.0;

  const PointFunction outer = g2_boundary_peak(f(z2));
  const Complex pair[] = {z1, z2};
  PointFunction handle{"symmetric_peak", {z1, z2},
                       [f, outer](const ComplexPoint& z) { return outer(push_forward(f, z)); }};
  return {symmetrize(pair), {z1, z2}, std::move(handle)};
}

PeakReport verify_peak(const PeakCandidate& candidate, const SymProduct& s, int samples, const ApproachSpec& approach,
                       std::uint64_t seed) {
  if (candidate.target.dim() != s.n()) throw ValidationError("verify_peak: target dimension differs from n");
  if (!s.base().bounded()) throw UnsupportedError("verify_peak: needs a bounded base");
  const auto [verdict, roots] = member_with_roots(s, candidate.target);
  if (verdict.state == Membership::In) throw ValidationError("verify_peak: target lies inside the domain");

  PeakReport report{candidate.target, 0.0, 0.0, {}, false, {}};
  try {
    for (int i = 0; i < samples; ++i) {
      Rng rng = derive_rng(seed, 0x9eac, static_cast<std::uint64_t>(i));
      std::vector<Complex> pts(s.n());
      for (auto& p : pts) p = sample_in_domain(rng, s.base());
      report.max_interior_modulus = std::max(report.max_interior_modulus, std::abs(candidate.handle(symmetrize(pts))));
    }
    report.target_value = candidate.handle(candidate.target);

    std::vector<Complex> target_roots = candidate.target_roots;
    if (target_roots.size() != s.n()) {
      // Put the root closest to (or beyond) the boundary first.
      target_roots.assign(roots.roots().begin(), roots.roots().end());
      std::stable_sort(target_roots.begin(), target_roots.end(), [&](Complex a, Complex b) {
        return contains(s.base(), a, 0.0).margin > contains(s.base(), b, 0.0).margin;
      });
    }
    const Complex c = s.base().center();
    for (int k = 1; k <= approach.steps; ++k) {
      std::vector<Complex> pts = target_roots;
      pts[0] = c + (1.0 - std::ldexp(1.0, -k)) * (target_roots[0] - c);
      report.approach.push_back({k, std::abs(candidate.handle(symmetrize(pts)))});
    }
  } catch (const Error& e) {
    report.pass = false;
    report.diagnostic = std::string("handle evaluation failed: ") + e.what();
    return report;
  }

  const bool interior_ok = report.max_interior_modulus < 1.0;
  const bool target_ok = std::abs(report.target_value - 1.0) <= 1e-9;
  report.pass = interior_ok && target_ok;
  if (!interior_ok) report.diagnostic = "interior modulus reaches 1";
  if (!target_ok) report.diagnostic += (report.diagnostic.empty() ? "" : "; ") + std::string("value at target is not 1");
  return report;
}

}  // namespace symprod
