#pragma once

// Peak functions on S_2(D) composed from a planar peak function f at a
// boundary point z1 and a peak function F of the symmetrized bidisc:
//
//     G(<w1, w2>) = F(pi_2(f(w1), f(w2))).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "symprod/domains.hpp"
#include "symprod/symgeo.hpp"

namespace symprod {

/// A function on (a subset of) C^n in symmetric coordinates.
struct PointFunction {
  std::string tag;
  std::vector<Complex> params;
  std::function<Complex(const ComplexPoint&)> eval;

  Complex operator()(const ComplexPoint& z) const { return eval(z); }
};

/// F(s, p) = (1 + conj(tau) Phi_1(s, p)) / 2 with tau = Phi_1(pi_2(1, b)),
/// a peak function of the symmetrized bidisc at pi_2(1, b).  Requires
/// |b| <= 1 and b != 1 (pi_2(1, 1) is the pole of Phi_1).
PointFunction g2_boundary_peak(Complex b);

struct PeakCandidate {
  ComplexPoint target;
  /// Roots of the target; the first one is the boundary point that peaks.
  std::vector<Complex> target_roots;
  PointFunction handle;
};

/// The composed candidate at pi_2(z1, z2) for a disc-kind domain, z1 on the
/// outer circle and z2 in the closure.  Throws ValidationError when z1 is not
/// a peak point of the domain (for example a puncture).
PeakCandidate symmetric_peak(const PlanarDomain& domain, Complex z1, Complex z2);

struct ApproachSpec {
  /// Radial approach in the escaping root with the others frozen, at
  /// t_k = 1 - 2^-k for k = 1..steps.
  int steps = 20;
};

struct ApproachSample {
  int k;
  double modulus;
};

struct PeakReport {
  ComplexPoint target;
  double max_interior_modulus = 0.0;
  Complex target_value = 0.0;
  std::vector<ApproachSample> approach;
  bool pass = false;
  std::string diagnostic;
};

/// Samples `samples` interior points of S_n(D) (symmetrized random roots),
/// evaluates the handle there, at the target and along the approach.  PASS
/// iff every interior modulus is < 1 and |value at target - 1| <= 1e-9.
PeakReport verify_peak(const PeakCandidate& candidate, const SymProduct& s, int samples,
                       const ApproachSpec& approach = {}, std::uint64_t seed = 0);

}  // namespace symprod
