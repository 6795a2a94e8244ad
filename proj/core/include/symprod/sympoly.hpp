#pragma once

// Conversion between unordered root tuples and elementary symmetric
// coordinates.  A point z = (z_1, ..., z_n) of C^n stands for the monic
// polynomial
//
//     p_z(t) = t^n + sum_{j=1}^n (-1)^j z_j t^{n-j},
//
// so that z = (sigma_1, ..., sigma_n) of the roots of p_z.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace symprod {

using Complex = std::complex<double>;

/// A point of C^n in elementary symmetric coordinates.
class ComplexPoint {
 public:
  /// Throws ValidationError when empty or when an entry is not finite.
  explicit ComplexPoint(std::vector<Complex> coords);
  ComplexPoint(std::initializer_list<Complex> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const Complex> coords() const noexcept { return coords_; }
  const Complex& operator[](std::size_t j) const { return coords_[j]; }

  friend bool operator==(const ComplexPoint&, const ComplexPoint&) = default;

 private:
  std::vector<Complex> coords_;
};

/// An unordered n-tuple of complex roots.  The stored order is whatever the
/// producer returned; only the multiset is meaningful.
class RootMultiset {
 public:
  /// Throws ValidationError when empty or when an entry is not finite.
  explicit RootMultiset(std::vector<Complex> roots);
  RootMultiset(std::initializer_list<Complex> roots);

  std::size_t size() const noexcept { return roots_.size(); }
  std::span<const Complex> roots() const noexcept { return roots_; }
  const Complex& operator[](std::size_t j) const { return roots_[j]; }

  /// Minimum pairwise distance, 0 for repeated roots and for n = 1.
  double collision_gap() const noexcept { return collision_gap_; }

 private:
  std::vector<Complex> roots_;
  double collision_gap_ = 0.0;
};

struct RootMatch {
  /// permutation[i] is the index into `b` matched with a[i].
  std::vector<std::size_t> permutation;
  double max_error = 0.0;
};

struct RootSolverOptions {
  double tol_res = 1e-12;
  int max_iterations = 200;
  /// Starting points; when absent they are spread on a circle enclosing
  /// every root.
  std::optional<std::vector<Complex>> initial_guesses;
};

/// Elementary symmetric polynomials (sigma_1, ..., sigma_n) of the roots.
/// The result is bitwise independent of the order of the input.
ComplexPoint symmetrize(std::span<const Complex> roots);
ComplexPoint symmetrize(const RootMultiset& roots);

/// p_z(mu) by Horner's rule.
Complex monic_eval(const ComplexPoint& z, Complex mu);

/// The n roots of p_z via Aberth-Ehrlich iteration.  Every returned root x
/// satisfies |p_z(x)| <= tol_res * max(1, sum_j |z_j| |x|^{n-j}).
/// Throws RootSolveError on non-convergence.
RootMultiset roots_of_point(const ComplexPoint& z, const RootSolverOptions& options = {});

/// Bijection minimizing max_i |a_i - b_perm(i)|, found by exhaustive search;
/// ties go to the lexicographically smallest permutation.  n <= 8.
RootMatch match_roots(std::span<const Complex> a, std::span<const Complex> b);
RootMatch match_roots(const RootMultiset& a, const RootMultiset& b);

/// Binomial coefficient C(n, k) as a double.
double binomial(int n, int k);

}  // namespace symprod
