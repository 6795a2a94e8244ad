#pragma once

// Geometry of the symmetric product S_n(D) = pi_n(D^n) of a planar domain:
// membership through the roots of p_z, induced maps, separating hyperplanes,
// hyperplane arrangements for punctured planes and the hyperbolicity
// classification by the size of C \ D.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symprod/domains.hpp"
#include "symprod/sympoly.hpp"

namespace symprod {

class SymProduct {
 public:
  /// Throws ValidationError for n < 2.
  SymProduct(PlanarDomain base, std::size_t n);

  const PlanarDomain& base() const noexcept { return base_; }
  std::size_t n() const noexcept { return n_; }

 private:
  PlanarDomain base_;
  std::size_t n_;
};

/// Membership of z in S_n(D) decided root by root.  The margin is the
/// largest root margin.  Root-solver failures propagate.
MembershipVerdict member(const SymProduct& s, const ComplexPoint& z,
                         double boundary_tol = kDefaultBoundaryTolerance);

/// Same verdict, also returning the roots it was decided on.
struct RootedVerdict {
  MembershipVerdict verdict;
  RootMultiset roots;
};
RootedVerdict member_with_roots(const SymProduct& s, const ComplexPoint& z,
                                double boundary_tol = kDefaultBoundaryTolerance);

/// F_f(z) = pi_n(f(root_1), ..., f(root_n)), computed in closed form from the
/// coordinates of z (no root finding).  Throws ValidationError when a root of
/// p_z sits on the pole of f.
ComplexPoint push_forward(const PlanarMap& f, const ComplexPoint& z);

/// The same map for an arbitrary one-variable function, through the roots.
ComplexPoint push_forward_roots(const std::function<Complex(Complex)>& f, const ComplexPoint& z);

using SymmetricFunction = std::function<Complex(std::span<const Complex>)>;

/// Evaluates F on the roots of p_z.  F is re-evaluated on two other orderings
/// and rejected (ValidationError) when the values disagree beyond 1e-10.
Complex symmetric_eval(const SymmetricFunction& f, const ComplexPoint& z);

/// The affine hyperplane {z : p_z(mu) = 0} of C^n.
class Hyperplane {
 public:
  Hyperplane(Complex witness, std::size_t n);

  Complex witness() const noexcept { return witness_; }
  std::size_t dim() const noexcept { return n_; }
  /// ((-1)^j mu^{n-j})_{j=1..n}; also the normal vector of the hyperplane.
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  /// mu^n.
  Complex offset() const noexcept { return offset_; }

  /// offset + <coeffs, z>, identical in value to monic_eval(z, witness).
  Complex operator()(const ComplexPoint& z) const;

 private:
  Complex witness_;
  std::size_t n_;
  std::vector<Complex> coeffs_;
  Complex offset_;
};

/// Hyperplane through w disjoint from S_n(D).  The witness is the exterior
/// root of p_w with the largest margin; when w is only a boundary point the
/// nearest point of C \ D to its outermost root is used.  Throws
/// ValidationError when w lies in S_n(D).
Hyperplane separating_hyperplane(const SymProduct& s, const ComplexPoint& w,
                                 double boundary_tol = kDefaultBoundaryTolerance);

struct AffineSubspace {
  ComplexPoint offset;
  /// Orthonormal basis of the direction space.
  std::vector<std::vector<Complex>> basis;
  std::vector<Complex> witnesses;

  std::size_t dimension() const noexcept { return basis.size(); }
  /// offset + sum_i t_i basis_i.
  ComplexPoint at(std::span<const Complex> t) const;
};

inline constexpr double kRankTolerance = 1e-8;

/// Rank of the stacked hyperplane normals of the given witnesses, with
/// singular values counted relative to the largest.
struct RankInfo {
  std::size_t rank = 0;
  double smallest_ratio = 0.0;  // sigma_min / sigma_max over the k rows
};
RankInfo normal_rank(std::span<const Complex> witnesses, std::size_t n, double tol = kRankTolerance);

/// The (n - k)-dimensional space of points whose polynomial vanishes at each
/// of the k distinct witnesses.  Throws ValidationError for repeated
/// witnesses or k outside [1, n], NumericalError on rank deficiency.
AffineSubspace intersection_space(std::span<const Complex> witnesses, std::size_t n);

struct GeneralPositionReport {
  std::size_t subsets_checked = 0;
  /// Subsets (as witness index lists) whose rank or intersection dimension
  /// came out wrong.
  std::vector<std::vector<std::size_t>> failures;
  double smallest_ratio = 1.0;

  bool general_position() const noexcept { return failures.empty(); }
};

struct Arrangement {
  std::vector<Hyperplane> hyperplanes;
  GeneralPositionReport report;
};

/// The hyperplanes H_j = {p_z(mu_j) = 0} whose union is the complement of
/// S_n(C \ {mu_1, ..., mu_N}), with an exhaustive general-position check over
/// all subsets of size k <= n.
Arrangement arrangement(std::span<const Complex> punctures, std::size_t n);

/// A nonconstant holomorphic curve C -> C^2.
struct EntireCurve {
  std::string tag;
  std::function<ComplexPoint(Complex)> eval;

  ComplexPoint operator()(Complex lambda) const { return eval(lambda); }
};

/// lambda -> (e^lambda + 2, e^lambda), an entire curve inside S_2(C \ {0, 1}).
EntireCurve entire_curve_witness();

enum class Verdict { KobayashiComplete, NotHyperbolic };

std::string to_string(Verdict v);

struct Classification {
  Verdict verdict;
  ComplementCardinality complement;
  std::size_t threshold;  // 2n
  std::optional<EntireCurve> witness;
  std::string reason;
};

/// Kobayashi complete exactly when #(C \ D) >= 2n.
Classification classify(const SymProduct& s);

/// (s, p) -> (p, s - p - 1), sending S_2(C \ {0, 1}) onto (C_*)^2.
ComplexPoint affine_iso_cstar2(const ComplexPoint& z);
/// (u, v) -> (v + u + 1, u).
ComplexPoint affine_iso_cstar2_inverse(const ComplexPoint& uv);

}  // namespace symprod
