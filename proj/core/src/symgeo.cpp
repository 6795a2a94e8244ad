#include "symprod/symgeo.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "symprod/errors.hpp"

namespace symprod {

namespace {

using Poly = std::vector<Complex>;  // ascending powers

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

bool lex_less(Complex a, Complex b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); }

// Nearest point of C \ D to a root that is within tolerance of the boundary.
Complex nearest_exterior_point(const PlanarDomain& d, Complex lambda) {
  Complex best = lambda;
  double best_dist = std::numeric_limits<double>::infinity();
  if (d.bounded()) {
    const Complex off = lambda - d.center();
    const Complex dir = (std::abs(off) > 0.0) ? off / std::abs(off) : Complex(1.0);
    best = d.center() + d.radius() * dir;
    best_dist = std::abs(std::abs(off) - d.radius());
  }
  for (const auto& mu : d.punctures()) {
    const double dist = std::abs(lambda - mu);
    if (dist < best_dist) {
      best_dist = dist;
      best = mu;
    }
  }
  return best;
}

}  // namespace

SymProduct::SymProduct(PlanarDomain base, std::size_t n) : base_(std::move(base)), n_(n) {
  if (n < 2) throw ValidationError("SymProduct: n must be at least 2");
}

RootedVerdict member_with_roots(const SymProduct& s, const ComplexPoint& z, double boundary_tol) {
  if (z.dim() != s.n()) throw ValidationError("member: point dimension differs from n");
  auto roots = roots_of_point(z);
  bool any_out = false;
  bool any_boundary = false;
  double margin = -std::numeric_limits<double>::infinity();
  for (const auto& r : roots.roots()) {
    const auto v = contains(s.base(), r, boundary_tol);
    any_out |= (v.state == Membership::Out);
    any_boundary |= (v.state == Membership::Boundary);
    margin = std::max(margin, v.margin);
  }
  const Membership state = any_out ? Membership::Out : (any_boundary ? Membership::Boundary : Membership::In);
  return {{state, margin}, std::move(roots)};
}

MembershipVerdict member(const SymProduct& s, const ComplexPoint& z, double boundary_tol) {
  return member_with_roots(s, z, boundary_tol).verdict;
}

ComplexPoint push_forward(const PlanarMap& f, const ComplexPoint& z) {
  // With A(t) = d t - b and B(t) = a - c t,
  //   prod_j (A - lambda_j B) = sum_k (-1)^k sigma_k A^{n-k} B^k
  // equals prod_j (c lambda_j + d) * prod_j (t - f(lambda_j)).
  const std::size_t n = z.dim();
  const Poly A{-f.b(), f.d()};
  const Poly B{f.a(), -f.c()};

  std::vector<Poly> a_pow(n + 1), b_pow(n + 1);
  a_pow[0] = b_pow[0] = Poly{1.0};
  for (std::size_t k = 1; k <= n; ++k) {
    a_pow[k] = poly_mul(a_pow[k - 1], A);
    b_pow[k] = poly_mul(b_pow[k - 1], B);
  }

  Poly r(n + 1, 0.0);
  double size = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const Complex sigma = (k == 0) ? Complex(1.0) : z[k - 1];
    const Complex sign = (k % 2 == 0) ? 1.0 : -1.0;
    const Poly term = poly_mul(a_pow[n - k], b_pow[k]);
    for (std::size_t i = 0; i < term.size() && i <= n; ++i) r[i] += sign * sigma * term[i];
    size += std::abs(sigma) * std::pow(std::abs(f.c()), static_cast<double>(k)) *
            std::pow(std::abs(f.d()), static_cast<double>(n - k));
  }
  const Complex lead = r[n];
  if (!(std::abs(lead) > 1e-13 * size))
    throw ValidationError("push_forward: a root of the point lies on the pole of the map");

  std::vector<Complex> out(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const Complex sign = (j % 2 == 0) ? 1.0 : -1.0;
    out[j - 1] = sign * r[n - j] / lead;
  }
  return ComplexPoint(std::move(out));
}

ComplexPoint push_forward_roots(const std::function<Complex(Complex)>& f, const ComplexPoint& z) {
  const auto roots = roots_of_point(z);
  std::vector<Complex> image(roots.size());
  std::transform(roots.roots().begin(), roots.roots().end(), image.begin(), f);
  return symmetrize(image);
}

Complex symmetric_eval(const SymmetricFunction& f, const ComplexPoint& z) {
  const auto roots = roots_of_point(z);
  std::vector<Complex> order(roots.roots().begin(), roots.roots().end());
  const Complex value = f(order);

  std::vector<Complex> reversed(order.rbegin(), order.rend());
  std::vector<Complex> shuffled = order;
  std::mt19937_64 rng(0x5eed5eedULL + z.dim());
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  if (shuffled == order && shuffled.size() > 1) std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());

  const double tol = 1e-10 * std::max(1.0, std::abs(value));
  for (const auto* other : {&reversed, &shuffled}) {
    if (std::abs(f(*other) - value) > tol)
      throw ValidationError("symmetric_eval: function is not symmetric in the roots");
  }
  return value;
}

Hyperplane::Hyperplane(Complex witness, std::size_t n) : witness_(witness), n_(n), coeffs_(n) {
  if (n < 1) throw ValidationError("Hyperplane: dimension must be at least 1");
  // coeffs_[j-1] = (-1)^j mu^{n-j}
  Complex power = 1.0;
  for (std::size_t j = n; j >= 1; --j) {
    coeffs_[j - 1] = (j % 2 == 0) ? power : -power;
    power *= witness;
  }
  offset_ = power;
}

Complex Hyperplane::operator()(const ComplexPoint& z) const {
  if (z.dim() != n_) throw ValidationError("Hyperplane: point dimension differs");
  Complex v = offset_;
  for (std::size_t j = 0; j < n_; ++j) v += coeffs_[j] * z[j];
  return v;
}

Hyperplane separating_hyperplane(const SymProduct& s, const ComplexPoint& w, double boundary_tol) {
  const auto [verdict, roots] = member_with_roots(s, w, boundary_tol);
  if (verdict.state == Membership::In)
    throw ValidationError("separating_hyperplane: point lies in the symmetric product");

  std::optional<Complex> chosen;
  double chosen_margin = -std::numeric_limits<double>::infinity();
  bool chosen_out = false;
  for (const auto& r : roots.roots()) {
    const auto v = contains(s.base(), r, boundary_tol);
    if (v.state == Membership::In) continue;
    const bool out = (v.state == Membership::Out);
    // Exterior roots beat boundary roots; then larger margin; then lexicographic.
    const bool better = !chosen || (out && !chosen_out) ||
                        (out == chosen_out && (v.margin > chosen_margin ||
                                               (v.margin == chosen_margin && lex_less(r, *chosen))));
    if (better) {
      chosen = r;
      chosen_margin = v.margin;
      chosen_out = out;
    }
  }
  if (!chosen) throw ValidationError("separating_hyperplane: no root outside the domain");
  const Complex mu = chosen_out ? *chosen : nearest_exterior_point(s.base(), *chosen);
  return Hyperplane(mu, s.n());
}

ComplexPoint AffineSubspace::at(std::span<const Complex> t) const {
  if (t.size() != basis.size()) throw ValidationError("AffineSubspace: coefficient count differs from dimension");
  std::vector<Complex> x(offset.coords().begin(), offset.coords().end());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += t[i] * basis[i][j];
  return ComplexPoint(std::move(x));
}

namespace {

Eigen::MatrixXcd normals_matrix(std::span<const Complex> witnesses, std::size_t n) {
  Eigen::MatrixXcd m(witnesses.size(), n);
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const Hyperplane h(witnesses[i], n);
    for (std::size_t j = 0; j < n; ++j) m(i, j) = h.coeffs()[j];
  }
  return m;
}

}  // namespace

RankInfo normal_rank(std::span<const Complex> witnesses, std::size_t n, double tol) {
  if (witnesses.empty()) return {0, 1.0};
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(normals_matrix(witnesses, n));
  const auto& sv = svd.singularValues();
  RankInfo info;
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  if (top == 0.0) return {0, 0.0};
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * top) ++info.rank;
  // k rows: the k-th singular value (zero when k exceeds n).
  info.smallest_ratio = witnesses.size() <= static_cast<std::size_t>(sv.size()) ? sv(witnesses.size() - 1) / top : 0.0;
  return info;
}

AffineSubspace intersection_space(std::span<const Complex> witnesses, std::size_t n) {
  const std::size_t k = witnesses.size();
  if (k < 1 || k > n) throw ValidationError("intersection_space: need 1 <= k <= n witnesses");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (witnesses[i] == witnesses[j])
        throw ValidationError("intersection_space: repeated witnesses are not supported");

  const Eigen::MatrixXcd m = normals_matrix(witnesses, n);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTolerance * sv(0)) ++rank;
  if (rank != k) throw NumericalError("intersection_space: witness normals are rank deficient");

  std::vector<Complex> roots(witnesses.begin(), witnesses.end());
  roots.resize(n, 0.0);
  AffineSubspace space{symmetrize(roots), {}, std::vector<Complex>(witnesses.begin(), witnesses.end())};
  const Eigen::MatrixXcd& v = svd.matrixV();
  for (std::size_t col = k; col < n; ++col) {
    std::vector<Complex> dir(n);
    for (std::size_t j = 0; j < n; ++j) dir[j] = v(j, col);
    space.basis.push_back(std::move(dir));
  }
  return space;
}

Arrangement arrangement(std::span<const Complex> punctures, std::size_t n) {
  if (punctures.empty()) throw ValidationError("arrangement: need at least one puncture");
  if (n < 1) throw ValidationError("arrangement: n must be positive");
  for (std::size_t i = 0; i < punctures.size(); ++i)
    for (std::size_t j = i + 1; j < punctures.size(); ++j)
      if (punctures[i] == punctures[j]) throw ValidationError("arrangement: punctures must be distinct");

  Arrangement out;
  for (const auto& mu : punctures) out.hyperplanes.emplace_back(mu, n);

  const std::size_t N = punctures.size();
  for (std::size_t k = 1; k <= std::min(n, N); ++k) {
    // Enumerate k-subsets in lexicographic order via a selection mask.
    std::vector<bool> mask(N, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::size_t> idx;
      std::vector<Complex> w;
      for (std::size_t i = 0; i < N; ++i) {
        if (mask[i]) {
          idx.push_back(i);
          w.push_back(punctures[i]);
        }
      }
      ++out.report.subsets_checked;
      const auto info = normal_rank(w, n);
      out.report.smallest_ratio = std::min(out.report.smallest_ratio, info.smallest_ratio);
      bool ok = (info.rank == k);
      if (ok) {
        try {
          ok = intersection_space(w, n).dimension() == n - k;
        } catch (const NumericalError&) {
          ok = false;
        }
      }
      if (!ok) out.report.failures.push_back(std::move(idx));
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return out;
}

EntireCurve entire_curve_witness() {
  return {"exp_shift_c_minus_0_1", [](Complex lambda) {
            const Complex e = std::exp(lambda);
            return ComplexPoint{e + 2.0, e};
          }};
}

std::string to_string(Verdict v) {
  return v == Verdict::KobayashiComplete ? "KOBAYASHI_COMPLETE" : "NOT_HYPERBOLIC";
}

Classification classify(const SymProduct& s) {
  const auto card = complement_cardinality(s.base());
  const std::size_t threshold = 2 * s.n();
  Classification c{card.at_least(threshold) ? Verdict::KobayashiComplete : Verdict::NotHyperbolic, card, threshold,
                   std::nullopt, ""};
  if (c.verdict == Verdict::KobayashiComplete) {
    c.reason = card.infinite() ? "complement is infinite" : "complement has at least 2n points";
    return c;
  }
  c.reason = "complement has fewer than 2n points";
  const auto p = s.base().punctures();
  const bool zero_one = s.n() == 2 && p.size() == 2 &&
                        ((p[0] == Complex(0.0) && p[1] == Complex(1.0)) ||
                         (p[0] == Complex(1.0) && p[1] == Complex(0.0)));
  if (zero_one) {
    c.witness = entire_curve_witness();
  } else {
    c.reason += "; witness construction out of scope";
  }
  return c;
}

ComplexPoint affine_iso_cstar2(const ComplexPoint& z) {
  if (z.dim() != 2) throw ValidationError("affine_iso_cstar2: point must be two-dimensional");
  return ComplexPoint{z[1], z[0] - z[1] - 1.0};
}

ComplexPoint affine_iso_cstar2_inverse(const ComplexPoint& uv) {
  if (uv.dim() != 2) throw ValidationError("affine_iso_cstar2_inverse: point must be two-dimensional");
  return ComplexPoint{uv[1] + uv[0] + 1.0, uv[0]};
}

}  // namespace symprod
