// Upper bounds for the Lempert function of S_n(D) from explicit analytic
// discs.
//
// A candidate is a polynomial map h: C -> C^n of degree <= d in symmetric
// coordinates with h(0) = z and h(1) = w.  If h maps the disc of radius R > 1
// into S_n(D), then f(zeta) = h(R zeta) is an analytic disc with f(0) = z and
// f(1/R) = w, hence l(z, w) <= atanh(1/R).  The search maximizes R over the
// free coefficients with a multistart Nelder-Mead simplex.
//
// The largest admissible R is found from two conditions:
//  * disc part: max_j |root_j(h(zeta)) - c| <= r - margin on |zeta| = R.
//    The left side is plurisubharmonic in h, so its maximum over the circle
//    grows with R and a bracketing search applies.
//  * punctures: q_mu(zeta) = p_{h(zeta)}(mu) must have no zero in the disc,
//    i.e. R < min |zeros of q_mu|, which is solved for exactly.

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <span>

#include "metrics_detail.hpp"
#include "symprod/errors.hpp"
#include "symprod/invmetrics.hpp"
#include "symprod/sampling.hpp"

namespace symprod {

namespace {

constexpr double kRadiusCap = 1e6;

// coef[j][k]: coefficient of zeta^k in coordinate j.
using DiscPoly = std::vector<std::vector<Complex>>;

// Roots of t^2 - s t + p without cancellation.
std::array<Complex, 2> quadratic_roots(Complex s, Complex p) {
  const Complex sq = std::sqrt(s * s - 4.0 * p);
  const Complex q = 0.5 * (s + ((std::real(std::conj(s) * sq) >= 0.0) ? sq : -sq));
  const double qq = std::norm(q);
  if (qq == 0.0) return {Complex(0.0), Complex(0.0)};
  return {q, p * std::conj(q) / qq};
}

class DiscProblem {
 public:
  DiscProblem(const SymProduct& s, const ComplexPoint& z, const ComplexPoint& w, const DiscSearchOptions& options)
      : s_(s), z_(z), w_(w), options_(options), n_(s.n()), free_degree_(std::max(0, options.degree - 1)) {
    circle_.resize(options.boundary_samples);
    for (int l = 0; l < options.boundary_samples; ++l)
      circle_[l] = std::polar(1.0, 2.0 * std::numbers::pi * l / options.boundary_samples);
  }

  std::size_t dimension() const { return 2 * n_ * free_degree_; }
  std::size_t evaluations() const { return evaluations_; }

  // Free coefficients a_2..a_d of every coordinate; a_1 closes h(1) = w.
  DiscPoly build(std::span<const double> x) const {
    DiscPoly poly(n_, std::vector<Complex>(free_degree_ + 2, 0.0));
    for (std::size_t j = 0; j < n_; ++j) {
      poly[j][0] = z_[j];
      Complex rest = 0.0;
      for (std::size_t k = 0; k < free_degree_; ++k) {
        const Complex a(x[2 * (j * free_degree_ + k)], x[2 * (j * free_degree_ + k) + 1]);
        poly[j][k + 2] = a;
        rest += a;
      }
      poly[j][1] = w_[j] - z_[j] - rest;
    }
    return poly;
  }

  static Complex horner(const std::vector<Complex>& coef, Complex zeta) {
    Complex v = 0.0;
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) v = v * zeta + *it;
    return v;
  }

  static ComplexPoint eval(const DiscPoly& poly, Complex zeta) {
    std::vector<Complex> x(poly.size());
    for (std::size_t j = 0; j < poly.size(); ++j) x[j] = horner(poly[j], zeta);
    return ComplexPoint(std::move(x));
  }

  // Largest |root - c| - r over `samples` points of the circle |zeta| = R.
  double circle_excess(const DiscPoly& poly, double radius, int samples) const {
    const auto& d = s_.base();
    double worst = -std::numeric_limits<double>::infinity();
    double worst_sq = 0.0;
    std::optional<std::vector<Complex>> guesses;
    for (int l = 0; l < samples; ++l) {
      const Complex zeta = (samples == options_.boundary_samples)
                               ? radius * circle_[l]
                               : std::polar(radius, 2.0 * std::numbers::pi * l / samples);
      if (n_ == 2) {
        for (const auto& r : quadratic_roots(horner(poly[0], zeta), horner(poly[1], zeta)))
          worst_sq = std::max(worst_sq, std::norm(r - d.center()));
      } else {
        const ComplexPoint x = eval(poly, zeta);
        RootSolverOptions opts;
        opts.initial_guesses = guesses;
        const auto roots = roots_of_point(x, opts);
        guesses.emplace(roots.roots().begin(), roots.roots().end());
        for (const auto& r : roots.roots()) worst = std::max(worst, std::abs(r - d.center()) - d.radius());
      }
    }
    if (n_ == 2) return std::sqrt(worst_sq) - d.radius();
    return worst;
  }

  // Smallest modulus of a zero of zeta -> p_{h(zeta)}(mu) over all punctures.
  double puncture_radius(const DiscPoly& poly) const {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t degree = poly[0].size() - 1;
    for (const auto& mu : s_.base().punctures()) {
      const Hyperplane h(mu, n_);
      std::vector<Complex> q(degree + 1, 0.0);  // ascending in zeta
      q[0] = h.offset();
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k <= degree; ++k) q[k] += h.coeffs()[j] * poly[j][k];
      double size = 0.0;
      for (const auto& c : q) size = std::max(size, std::abs(c));
      std::size_t top = degree;
      while (top > 0 && std::abs(q[top]) <= 1e-14 * size) --top;
      if (q[0] == Complex(0.0)) return 0.0;
      if (top == 0) continue;
      // Monic q / q_top in the symmetric-coordinate convention of p_z.
      std::vector<Complex> coords(top);
      for (std::size_t j = 1; j <= top; ++j) {
        const Complex c = q[top - j] / q[top];
        coords[j - 1] = (j % 2 == 0) ? c : -c;
      }
      for (const auto& r : roots_of_point(ComplexPoint(std::move(coords))).roots()) best = std::min(best, std::abs(r));
    }
    return best;
  }

  // Largest R with h(disc of radius R) inside S_n(D) with the margin.
  double feasible_radius(const DiscPoly& poly) const {
    const double m = options_.feasibility_margin;
    const double hi_cap = std::min(kRadiusCap, (1.0 - m) * puncture_radius(poly));
    if (!(hi_cap > 0.0)) return 0.0;
    if (!s_.base().bounded()) return hi_cap;

    const auto g = [&](double radius) { return circle_excess(poly, radius, options_.boundary_samples) + m; };
    if (g(0.0) > 0.0) return 0.0;
    double lo = 0.0;
    double hi = std::min(1.0, hi_cap);
    double g_lo = g(0.0);
    double g_hi = g(hi);
    while (g_hi <= 0.0) {
      if (hi >= hi_cap) return hi_cap;
      lo = hi;
      g_lo = g_hi;
      hi = std::min(2.0 * hi, hi_cap);
      g_hi = g(hi);
    }
    // Illinois variant of regula falsi on the increasing function g.
    int side = 0;
    for (int it = 0; it < 100 && hi - lo > 1e-10 * hi; ++it) {
      double mid = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
      if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
      const double g_mid = g(mid);
      if (g_mid <= 0.0) {
        lo = mid;
        g_lo = g_mid;
        if (side == -1) g_hi *= 0.5;
        side = -1;
      } else {
        hi = mid;
        g_hi = g_mid;
        if (side == 1) g_lo *= 0.5;
        side = 1;
      }
    }
    return lo;
  }

  double objective(std::span<const double> x) {
    ++evaluations_;
    const double radius = feasible_radius(build(x));
    return radius > 0.0 ? 1.0 / radius : 1e6;
  }

  const SymProduct& s() const { return s_; }
  const DiscSearchOptions& options() const { return options_; }

 private:
  const SymProduct& s_;
  const ComplexPoint& z_;
  const ComplexPoint& w_;
  DiscSearchOptions options_;
  std::size_t n_;
  std::size_t free_degree_;
  std::vector<Complex> circle_;
  std::size_t evaluations_ = 0;
};

double gsl_objective(const gsl_vector* v, void* params) {
  auto* problem = static_cast<DiscProblem*>(params);
  return problem->objective(std::span<const double>(v->data, v->size));
}

struct GslVectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct GslMinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
using GslVector = std::unique_ptr<gsl_vector, GslVectorDeleter>;
using GslMinimizer = std::unique_ptr<gsl_multimin_fminimizer, GslMinimizerDeleter>;

struct StartResult {
  std::vector<double> x;
  double value;
};

// Nelder-Mead from `start`, restarted from its own optimum while the
// relative improvement stays above 1e-8, within `budget` evaluations.
StartResult nelder_mead(DiscProblem& problem, std::vector<double> start, double step, std::size_t budget) {
  const std::size_t dim = start.size();
  if (dim == 0) return {start, problem.objective(start)};

  gsl_multimin_function fn{&gsl_objective, dim, &problem};
  GslVector x(gsl_vector_alloc(dim));
  GslVector steps(gsl_vector_alloc(dim));
  GslMinimizer minimizer(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
  const std::size_t stop_at = problem.evaluations() + budget;

  StartResult best{start, std::numeric_limits<double>::infinity()};
  for (int restart = 0; restart < 8 && problem.evaluations() < stop_at; ++restart) {
    for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x.get(), i, best.x[i]);
    gsl_vector_set_all(steps.get(), step);
    gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), steps.get());
    const double before = best.value;
    while (problem.evaluations() < stop_at) {
      if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
      if (gsl_multimin_fminimizer_size(minimizer.get()) < 1e-10) break;
    }
    if (minimizer->fval < best.value) {
      best.value = minimizer->fval;
      for (std::size_t i = 0; i < dim; ++i) best.x[i] = gsl_vector_get(minimizer->x, i);
    }
    if (std::isfinite(before) && !(before - best.value > 1e-8 * before)) break;
    step *= 0.5;
  }
  return best;
}

// Taylor coefficients 2..d of the permutation disc, rescaled so that it
// reaches w at zeta = 1.
std::optional<std::vector<double>> permutation_start(const SymProduct& s, const ComplexPoint& z, const ComplexPoint& w,
                                                     int degree) {
  const auto& d = s.base();
  const auto match = detail::permutation_match(d, roots_of_point(z), roots_of_point(w));
  const double sigma = std::tanh(match.distance);
  if (!(sigma > 0.0 && sigma < 1.0)) return std::nullopt;

  const std::size_t n = s.n();
  std::vector<Complex> alpha(n), kappa(n);
  for (std::size_t j = 0; j < n; ++j) {
    alpha[j] = (match.sources[j] - d.center()) / d.radius();
    const Complex beta = (match.targets[j] - d.center()) / d.radius();
    kappa[j] = (beta - alpha[j]) / (1.0 - std::conj(alpha[j]) * beta) / sigma;
  }
  const auto disc = [&](Complex zeta) {
    std::vector<Complex> roots(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex y = sigma * zeta * kappa[j];
      roots[j] = d.center() + d.radius() * (y + alpha[j]) / (1.0 + std::conj(alpha[j]) * y);
    }
    return symmetrize(roots);
  };

  constexpr int kNodes = 32;
  constexpr double kRho = 0.5;
  std::vector<std::vector<Complex>> taylor(n, std::vector<Complex>(degree + 1, 0.0));
  for (int l = 0; l < kNodes; ++l) {
    const double theta = 2.0 * std::numbers::pi * l / kNodes;
    const ComplexPoint x = disc(std::polar(kRho, theta));
    for (std::size_t j = 0; j < n; ++j)
      for (int k = 0; k <= degree; ++k) taylor[j][k] += x[j] * std::polar(1.0, -k * theta) / (kNodes * std::pow(kRho, k));
  }
  std::vector<double> start;
  for (std::size_t j = 0; j < n; ++j)
    for (int k = 2; k <= degree; ++k) {
      start.push_back(taylor[j][k].real());
      start.push_back(taylor[j][k].imag());
    }
  return start;
}

}  // namespace

DistanceBound lempert_upper_disc_search(const SymProduct& s, const ComplexPoint& z_in, const ComplexPoint& w_in,
                                        const DiscSearchOptions& options) {
  if (options.degree < 1) throw ValidationError("lempert_upper_disc_search: degree must be at least 1");
  if (options.boundary_samples < 8) throw ValidationError("lempert_upper_disc_search: too few boundary samples");
  if (!(options.feasibility_margin > 0.0)) throw ValidationError("lempert_upper_disc_search: margin must be positive");
  detail::require_inside(s, z_in, "lempert_upper_disc_search");
  detail::require_inside(s, w_in, "lempert_upper_disc_search");
  const bool swap = detail::point_less(w_in, z_in);
  const ComplexPoint& z = swap ? w_in : z_in;
  const ComplexPoint& w = swap ? z_in : w_in;

  DistanceBound out;
  if (z == w) {
    out.upper = 0.0;
    out.upper_cert.kind = UpperCertificate::Kind::Identical;
    return out;
  }

  gsl_set_error_handler_off();
  DiscProblem problem(s, z, w, options);
  const std::size_t dim = problem.dimension();
  const bool disc_base = detail::is_disc(s.base());

  double scale = 0.1;
  for (std::size_t j = 0; j < s.n(); ++j) scale = std::max(scale, std::abs(w[j] - z[j]));

  std::vector<std::vector<double>> anchors{std::vector<double>(dim, 0.0)};
  if (disc_base) {
    if (auto p = permutation_start(s, z, w, options.degree)) anchors.push_back(std::move(*p));
  }

  const int starts = std::max(1, options.multistarts);
  const std::size_t per_start = std::max<std::size_t>(1, options.budget / static_cast<std::size_t>(starts));
  StartResult best{{}, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < starts; ++i) {
    std::vector<double> start = anchors[static_cast<std::size_t>(i) % anchors.size()];
    if (static_cast<std::size_t>(i) >= anchors.size()) {
      Rng rng = derive_rng(options.seed, 0xd15c, static_cast<std::uint64_t>(i));
      for (std::size_t c = 0; c + 1 < dim; c += 2) {
        const Complex delta = uniform_in_disc(rng, 0.0, 0.3 * scale);
        start[c] += delta.real();
        start[c + 1] += delta.imag();
      }
    }
    auto result = nelder_mead(problem, std::move(start), 0.1 * scale, per_start);
    if (result.value < best.value) best = std::move(result);
  }

  // Dense re-check of the winner; shrink the radius until it passes.
  std::optional<DiscCertificate> certificate;
  const DiscPoly poly = problem.build(best.x);
  double radius = problem.feasible_radius(poly);
  if (radius > 1.0) {
    const double m = options.feasibility_margin;
    for (int shrink = 0; shrink < 60 && radius > 1.0; ++shrink) {
      const bool ok = !s.base().bounded() || problem.circle_excess(poly, radius, 16 * options.boundary_samples) <= -0.5 * m;
      if (ok) break;
      radius *= 1.0 - 1e-4;
    }
    if (radius > 1.0) {
      DiscCertificate cert;
      cert.sigma = 1.0 / radius;
      cert.coefficients = poly;
      for (auto& coord : cert.coefficients)
        for (std::size_t k = 0; k < coord.size(); ++k) coord[k] *= std::pow(radius, static_cast<double>(k));
      double margin = std::numeric_limits<double>::infinity();
      for (int l = 0; l < options.boundary_samples; ++l) {
        const auto roots =
            roots_of_point(cert(std::polar(1.0, 2.0 * std::numbers::pi * l / options.boundary_samples)));
        for (const auto& r : roots.roots()) margin = std::min(margin, -contains(s.base(), r, 0.0).margin);
      }
      cert.boundary_margin = margin;
      if (margin > 0.0) certificate = std::move(cert);
    }
  }

  if (certificate) {
    out.upper = std::atanh(certificate->sigma);
    out.upper_cert.kind = UpperCertificate::Kind::Disc;
    out.upper_cert.disc = std::move(certificate);
  } else {
    out.upper_cert.diagnostic = "no feasible disc found within budget";
  }

  if (disc_base) {
    const auto perm = lempert_upper_permutation(s, z, w);
    if (perm.upper < out.upper) {
      out.upper = perm.upper;
      out.upper_cert = perm.upper_cert;
    }
  }
  return out;
}

}  // namespace symprod
