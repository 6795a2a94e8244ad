#include "symprod/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "symprod/errors.hpp"

namespace symprod {

namespace {

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void require_finite(std::span<const Complex> values, const char* what) {
  if (values.empty()) throw ValidationError(std::string(what) + ": dimension must be at least 1");
  for (const auto& v : values) {
    if (!is_finite(v)) throw ValidationError(std::string(what) + ": non-finite entry");
  }
}

double min_pairwise_gap(std::span<const Complex> roots) {
  if (roots.size() < 2) return 0.0;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) gap = std::min(gap, std::abs(roots[i] - roots[j]));
  return gap;
}

// Coefficients of p_z in descending powers, c[0] = 1.
std::vector<Complex> monic_coefficients(const ComplexPoint& z) {
  std::vector<Complex> c(z.dim() + 1);
  c[0] = 1.0;
  for (std::size_t j = 1; j <= z.dim(); ++j) c[j] = (j % 2 == 0) ? z[j - 1] : -z[j - 1];
  return c;
}

struct HornerResult {
  Complex value;
  Complex derivative;
  double scale;  // sum |c_j| |x|^{n-j}, the rounding scale of value
};

HornerResult horner(std::span<const Complex> c, Complex x) {
  Complex p = c[0];
  Complex dp = 0.0;
  double scale = std::abs(c[0]);
  const double ax = std::abs(x);
  for (std::size_t j = 1; j < c.size(); ++j) {
    dp = dp * x + p;
    p = p * x + c[j];
    scale = scale * ax + std::abs(c[j]);
  }
  return {p, dp, scale};
}

std::vector<Complex> circle_guesses(const ComplexPoint& z, double rotation) {
  const std::size_t n = z.dim();
  double bound = 0.0;
  for (std::size_t j = 1; j <= n; ++j)
    bound = std::max(bound, std::pow(std::abs(z[j - 1]), 1.0 / static_cast<double>(j)));
  const double radius = 1.0 + bound;
  std::vector<Complex> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + rotation;
    x[k] = std::polar(radius, angle);
  }
  return x;
}

// Normalized residuals |p(x_k)| / max(1, scale_k).
std::vector<double> residuals(std::span<const Complex> c, std::span<const Complex> x) {
  std::vector<double> r(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto h = horner(c, x[k]);
    r[k] = std::abs(h.value) / std::max(1.0, h.scale);
  }
  return r;
}

// One Gauss-Seidel sweep of the Aberth correction.
void aberth_sweep(std::span<const Complex> c, std::vector<Complex>& x) {
  const std::size_t n = x.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto h = horner(c, x[k]);
    if (h.value == Complex(0.0)) continue;
    Complex repulsion = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const Complex d = x[k] - x[j];
      if (d != Complex(0.0)) repulsion += 1.0 / d;
    }
    Complex step;
    if (h.derivative == Complex(0.0)) {
      step = std::polar(1e-8 * std::max(1.0, std::abs(x[k])), 1.0 + static_cast<double>(k));
    } else {
      const Complex newton = h.value / h.derivative;
      const Complex denom = 1.0 - newton * repulsion;
      step = (denom == Complex(0.0)) ? newton : newton / denom;
    }
    if (is_finite(step)) x[k] -= step;
  }
}

}  // namespace

ComplexPoint::ComplexPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
  require_finite(coords_, "ComplexPoint");
}

ComplexPoint::ComplexPoint(std::initializer_list<Complex> coords)
    : ComplexPoint(std::vector<Complex>(coords)) {}

RootMultiset::RootMultiset(std::vector<Complex> roots) : roots_(std::move(roots)) {
  require_finite(roots_, "RootMultiset");
  collision_gap_ = min_pairwise_gap(roots_);
}

RootMultiset::RootMultiset(std::initializer_list<Complex> roots)
    : RootMultiset(std::vector<Complex>(roots)) {}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(b);
}

ComplexPoint symmetrize(std::span<const Complex> roots) {
  require_finite(roots, "symmetrize");
  // A canonical order makes the floating-point result permutation invariant.
  // Adding +0.0 folds -0.0 into +0.0 so the order is total on the values.
  std::vector<Complex> sorted(roots.size());
  std::transform(roots.begin(), roots.end(), sorted.begin(),
                 [](Complex r) { return Complex(r.real() + 0.0, r.imag() + 0.0); });
  std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });

  const std::size_t n = sorted.size();
  std::vector<Complex> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k + 1; j >= 1; --j) e[j] += sorted[k] * e[j - 1];
  }
  return ComplexPoint(std::vector<Complex>(e.begin() + 1, e.end()));
}

ComplexPoint symmetrize(const RootMultiset& roots) { return symmetrize(roots.roots()); }

Complex monic_eval(const ComplexPoint& z, Complex mu) {
  Complex p = 1.0;
  for (std::size_t j = 1; j <= z.dim(); ++j) {
    const Complex c = (j % 2 == 0) ? z[j - 1] : -z[j - 1];
    p = p * mu + c;
  }
  return p;
}

RootMultiset roots_of_point(const ComplexPoint& z, const RootSolverOptions& options) {
  const std::size_t n = z.dim();
  if (n == 1) return RootMultiset({z[0]});

  const auto c = monic_coefficients(z);
  std::vector<Complex> x;
  if (options.initial_guesses) {
    x = *options.initial_guesses;
    if (x.size() != n) throw ValidationError("roots_of_point: initial guess count differs from degree");
  } else {
    x = circle_guesses(z, 0.4);
  }

  std::vector<Complex> best = x;
  double best_residual = std::numeric_limits<double>::infinity();
  constexpr int kStagnationWindow = 25;

  for (int attempt = 0; attempt < 2; ++attempt) {
    int since_improvement = 0;
    for (int it = 0; it < options.max_iterations; ++it) {
      aberth_sweep(c, x);
      const auto r = residuals(c, x);
      const double worst = *std::max_element(r.begin(), r.end());
      if (worst < best_residual) {
        best_residual = worst;
        best = x;
        since_improvement = 0;
      } else if (++since_improvement > kStagnationWindow) {
        break;
      }
      if (worst <= options.tol_res) {
        // Keep sweeping while the residual still drops.  Simple roots stop
        // after one or two sweeps; clusters converge only linearly.
        double current = worst;
        for (int extra = 0; extra < 100 && current > 0.0; ++extra) {
          auto trial = x;
          aberth_sweep(c, trial);
          const auto rt = residuals(c, trial);
          const double next = *std::max_element(rt.begin(), rt.end());
          if (!(next < current)) break;
          x = std::move(trial);
          current = next;
        }
        return RootMultiset(std::move(x));
      }
    }
    // Restart on a rotated circle.
    x = circle_guesses(z, 0.4 + 2.0 * std::numbers::pi * 0.6180339887498949 / static_cast<double>(n));
  }
  throw RootSolveError("roots_of_point: Aberth iteration did not converge", best, residuals(c, best));
}

RootMatch match_roots(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ValidationError("match_roots: multisets differ in size");
  const std::size_t n = a.size();
  if (n == 0) return {};
  if (n > 8) throw UnsupportedError("match_roots: exhaustive matching supports n <= 8");

  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = std::abs(a[i] - b[j]);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  RootMatch best{perm, std::numeric_limits<double>::infinity()};
  do {
    double worst = 0.0;
    bool pruned = false;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, dist[i * n + perm[i]]);
      if (worst >= best.max_error) {
        pruned = true;
        break;
      }
    }
    if (!pruned) best = {perm, worst};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

RootMatch match_roots(const RootMultiset& a, const RootMultiset& b) { return match_roots(a.roots(), b.roots()); }

}  // namespace symprod
