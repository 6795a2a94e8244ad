#include "acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "json_io.hpp"
#include "symprod/errors.hpp"
#include "symprod/invmetrics.hpp"
#include "symprod/peaks.hpp"
#include "symprod/sampling.hpp"
#include "symprod/symgeo.hpp"
#include "symprod/sympoly.hpp"

namespace symprod::cli {

namespace {

using nlohmann::json;

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::vector<Complex> random_roots(Rng& rng, std::size_t n, Complex center, double radius) {
  std::vector<Complex> r(n);
  for (auto& x : r) x = uniform_in_disc(rng, center, radius);
  return r;
}

ComplexPoint random_g2_point(Rng& rng, double radius = 1.0) {
  return symmetrize(random_roots(rng, 2, 0.0, radius));
}

CriterionResult round_trip(std::uint64_t seed) {
  constexpr int kPerDegree = 2000;
  CriterionResult r{1, "round-trip kernel", false, {}, {}};
  int total = 0, ok = 0;
  double worst = 0.0;
  json per_degree = json::array();
  for (std::size_t n = 2; n <= 6; ++n) {
    int good = 0;
    double worst_n = 0.0;
    for (int i = 0; i < kPerDegree; ++i) {
      Rng rng = derive_rng(seed, 100 + n, static_cast<std::uint64_t>(i));
      std::vector<Complex> roots;
      do {
        roots = random_roots(rng, n, 0.0, 1.0);
      } while (RootMultiset(roots).collision_gap() <= 1e-3);
      double err = std::numeric_limits<double>::infinity();
      try {
        err = match_roots(roots_of_point(symmetrize(roots)).roots(), roots).max_error;
      } catch (const NumericalError&) {
      }
      worst_n = std::max(worst_n, err);
      if (err < 1e-8) ++good;
    }
    per_degree.push_back({{"n", n}, {"cases", kPerDegree}, {"passed", good}, {"max_error", worst_n}});
    total += kPerDegree;
    ok += good;
    worst = std::max(worst, worst_n);
  }
  r.pass = ok == total;
  r.data = {{"cases", total}, {"passed", ok}, {"max_error", worst}, {"per_degree", per_degree}};
  r.summary = std::to_string(ok) + "/" + std::to_string(total) + " matched, max error " + fmt("%.2e", worst);
  return r;
}

// Random points of C^2 that hit, nearly hit or avoid the hyperplanes.
ComplexPoint arrangement_probe(Rng& rng, std::span<const Complex> punctures) {
  const double u = uniform01(rng);
  const Complex mu = punctures[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(punctures.size()))];
  const Complex other = uniform_in_disc(rng, 0.0, 3.0);
  if (u < 0.5) return ComplexPoint{uniform_in_disc(rng, 0.0, 6.0), uniform_in_disc(rng, 0.0, 9.0)};
  if (u < 0.75) {
    const Complex roots[] = {mu, other};
    return symmetrize(roots);
  }
  const double eps = std::pow(10.0, -5.0 + 2.0 * uniform01(rng));
  const Complex roots[] = {mu + std::polar(eps, 2.0 * std::numbers::pi * uniform01(rng)), other};
  return symmetrize(roots);
}

CriterionResult arrangement_equivalence(std::uint64_t seed) {
  constexpr int kPoints = 10000;
  CriterionResult r{2, "arrangement oracle equivalence", true, {}, json::array()};
  Rng set_rng = derive_rng(seed, 200, 0);
  std::vector<Complex> random_set;
  while (random_set.size() < 6) {
    const Complex c = uniform_in_disc(set_rng, 0.0, 2.0);
    if (std::all_of(random_set.begin(), random_set.end(), [&](Complex p) { return std::abs(p - c) > 1e-2; }))
      random_set.push_back(c);
  }
  const std::vector<std::vector<Complex>> sets = {{0.0, 1.0}, random_set};
  int total_agree = 0, total_used = 0;
  for (std::size_t si = 0; si < sets.size(); ++si) {
    const SymProduct s(PlanarDomain::complement_finite(sets[si]), 2);
    const auto arr = arrangement(sets[si], 2);
    int used = 0, skipped = 0, agree = 0, on_arrangement = 0;
    for (int i = 0; i < kPoints; ++i) {
      Rng rng = derive_rng(seed, 201 + si, static_cast<std::uint64_t>(i));
      const ComplexPoint z = arrangement_probe(rng, sets[si]);
      bool ambiguous = false, outside = false;
      for (const auto& h : arr.hyperplanes) {
        const double v = std::abs(monic_eval(z, h.witness()));
        if (v > 0.0 && v <= 1e-6) ambiguous = true;
        if (v == 0.0) outside = true;
      }
      if (ambiguous) {
        ++skipped;
        continue;
      }
      ++used;
      if (outside) ++on_arrangement;
      const bool root_in = member(s, z).state == Membership::In;
      if (root_in == !outside) ++agree;
    }
    r.pass = r.pass && agree == used;
    total_agree += agree;
    total_used += used;
    r.data.push_back({{"punctures", to_json(std::span<const Complex>(sets[si]))},
                      {"evaluated", used},
                      {"skipped_ambiguous", skipped},
                      {"on_arrangement", on_arrangement},
                      {"agree", agree}});
  }
  r.summary = std::to_string(total_agree) + "/" + std::to_string(total_used) + " points agree";
  return r;
}

CriterionResult linear_convexity(std::uint64_t seed) {
  constexpr int kPoints = 1000;
  constexpr int kOnPlane = 100;
  CriterionResult r{3, "linear convexity certificate", true, {}, json::array()};
  const std::vector<SymProduct> domains = {SymProduct(PlanarDomain::unit_disc(), 2),
                                           SymProduct(PlanarDomain::complement_finite({0.0, 1.0}), 2)};
  int total = 0, good = 0;
  for (std::size_t di = 0; di < domains.size(); ++di) {
    const auto& s = domains[di];
    int ok = 0;
    double worst_residual = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      Rng rng = derive_rng(seed, 300 + di, static_cast<std::uint64_t>(i));
      Complex outside;
      if (di == 0) {
        const double radius = 1.0 + 1e-6 + 2.0 * uniform01(rng);
        outside = std::polar(radius, 2.0 * std::numbers::pi * uniform01(rng));
      } else {
        outside = uniform01(rng) < 0.5 ? Complex(0.0) : Complex(1.0);
      }
      const Complex roots[] = {outside, uniform_in_disc(rng, 0.0, 3.0)};
      const ComplexPoint w = symmetrize(roots);
      bool this_ok = true;
      try {
        const Hyperplane h = separating_hyperplane(s, w);
        const double residual = std::abs(monic_eval(w, h.witness()));
        worst_residual = std::max(worst_residual, residual);
        this_ok = residual < 1e-9;
        const Complex witness[] = {h.witness()};
        const AffineSubspace plane = intersection_space(witness, 2);
        for (int j = 0; j < kOnPlane && this_ok; ++j) {
          if (member(s, sample_on(plane, rng)).state == Membership::In) this_ok = false;
        }
      } catch (const Error&) {
        this_ok = false;
      }
      if (this_ok) ++ok;
    }
    r.pass = r.pass && ok == kPoints;
    total += kPoints;
    good += ok;
    r.data.push_back({{"domain", to_json(s.base())},
                      {"points", kPoints},
                      {"certified", ok},
                      {"max_residual", worst_residual}});
  }
  r.summary = std::to_string(good) + "/" + std::to_string(total) + " exterior points certified";
  return r;
}

CriterionResult general_position(std::uint64_t seed) {
  CriterionResult r{4, "general position", true, {}, json::array()};
  std::size_t checked = 0;
  double smallest = 1.0;
  for (std::size_t n = 2; n <= 3; ++n) {
    Rng rng = derive_rng(seed, 400, n);
    std::vector<Complex> punctures;
    while (punctures.size() < 2 * n + 3) {
      const Complex c = uniform_in_disc(rng, 0.0, 2.0);
      if (std::all_of(punctures.begin(), punctures.end(), [&](Complex p) { return p != c; })) punctures.push_back(c);
    }
    const auto arr = arrangement(punctures, n);
    r.pass = r.pass && arr.report.general_position();
    checked += arr.report.subsets_checked;
    smallest = std::min(smallest, arr.report.smallest_ratio);
    r.data.push_back({{"n", n},
                      {"punctures", punctures.size()},
                      {"subsets_checked", arr.report.subsets_checked},
                      {"failures", arr.report.failures.size()},
                      {"smallest_ratio", arr.report.smallest_ratio}});
  }
  r.summary = std::to_string(checked) + " witness subsets, smallest singular ratio " + fmt("%.2e", smallest);
  return r;
}

CriterionResult classification_table(std::uint64_t seed) {
  CriterionResult r{5, "classification table", true, {}, {}};
  json table = json::array();
  for (std::size_t n = 2; n <= 3; ++n) {
    for (std::size_t N = 1; N <= 8; ++N) {
      std::vector<Complex> punctures;
      for (std::size_t j = 0; j < N; ++j) punctures.emplace_back(static_cast<double>(j), 0.0);
      const auto c = classify(SymProduct(PlanarDomain::complement_finite(punctures), n));
      const bool expected_complete = N >= 2 * n;
      const bool ok = (c.verdict == Verdict::KobayashiComplete) == expected_complete;
      r.pass = r.pass && ok;
      table.push_back({{"n", n}, {"N", N}, {"verdict", to_string(c.verdict)}, {"ok", ok}});
    }
  }
  const auto c = classify(SymProduct(PlanarDomain::complement_finite({0.0, 1.0}), 2));
  int avoid = 0;
  double min_at_one = std::numeric_limits<double>::infinity();
  constexpr int kLambdas = 1000;
  if (c.witness) {
    for (int i = 0; i < kLambdas; ++i) {
      Rng rng = derive_rng(seed, 500, static_cast<std::uint64_t>(i));
      const ComplexPoint z = (*c.witness)(uniform_in_disc(rng, 0.0, 5.0));
      const double at_one = std::abs(monic_eval(z, 1.0));
      min_at_one = std::min(min_at_one, at_one);
      if (at_one >= 1.0 - 1e-12 && monic_eval(z, 0.0) != Complex(0.0)) ++avoid;
    }
  }
  r.pass = r.pass && c.witness.has_value() && avoid == kLambdas;
  r.data = {{"table", table}, {"witness_samples", kLambdas}, {"witness_avoids", avoid}, {"min_abs_at_1", min_at_one}};
  r.summary = "16 verdicts checked, witness curve avoids both hyperplanes at " + std::to_string(avoid) + "/" +
              std::to_string(kLambdas) + " samples";
  return r;
}

CriterionResult metric_calibration(std::uint64_t seed) {
  CriterionResult r{6, "metric calibration", true, {}, {}};
  const SymProduct g2(PlanarDomain::unit_disc(), 2);
  const ComplexPoint origin{0.0, 0.0};
  json calib = json::array();
  double worst_lower = 0.0, worst_upper = -1.0;
  for (double modulus : {0.3, 0.6, 0.9}) {
    Rng rng = derive_rng(seed, 600, static_cast<std::uint64_t>(modulus * 10));
    const Complex p = std::polar(modulus, 2.0 * std::numbers::pi * uniform01(rng));
    const ComplexPoint w{0.0, p};
    const double exact = std::atanh(modulus);
    const double lower = carath_lower(g2, origin, w).lower;
    DiscSearchOptions opts;
    opts.seed = seed;
    const double upper = lempert_upper_disc_search(g2, origin, w, opts).upper;
    const bool ok = std::abs(lower - exact) <= 1e-9 && upper <= exact + 1e-3 && lower <= upper + 1e-9;
    r.pass = r.pass && ok;
    worst_lower = std::max(worst_lower, std::abs(lower - exact));
    worst_upper = std::max(worst_upper, upper - exact);
    calib.push_back({{"p", to_json(p)}, {"exact", exact}, {"lower", lower}, {"upper", upper}, {"ok", ok}});
  }
  constexpr int kPairs = 100;
  int sandwiched = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  DiscSearchOptions quick;
  quick.multistarts = 2;
  quick.budget = 300;
  quick.seed = seed;
  for (int i = 0; i < kPairs; ++i) {
    Rng rng = derive_rng(seed, 601, static_cast<std::uint64_t>(i));
    const ComplexPoint z = random_g2_point(rng, 0.95);
    const ComplexPoint w = random_g2_point(rng, 0.95);
    const double lower = carath_lower(g2, z, w).lower;
    const double perm = lempert_upper_permutation(g2, z, w).upper;
    const double disc = lempert_upper_disc_search(g2, z, w, quick).upper;
    min_gap = std::min(min_gap, std::min(perm, disc) - lower);
    if (lower <= perm + 1e-9 && lower <= disc + 1e-9) ++sandwiched;
  }
  r.pass = r.pass && sandwiched == kPairs;
  r.data = {{"calibration", calib}, {"random_pairs", kPairs}, {"sandwiched", sandwiched}, {"min_gap", min_gap}};
  r.summary = "calibration lower error " + fmt("%.1e", worst_lower) + ", upper excess " + fmt("%.1e", worst_upper) +
              ", sandwich " + std::to_string(sandwiched) + "/" + std::to_string(kPairs);
  return r;
}

CriterionResult divergence(std::uint64_t) {
  CriterionResult r{7, "divergence", true, {}, {}};
  const SymProduct g2(PlanarDomain::unit_disc(), 2);
  SequenceSpec seq;
  const auto report = divergence_probe(g2, ComplexPoint{0.0, 0.0}, seq, 20);
  double worst = 0.0;
  for (const auto& row : report.rows)
    worst = std::max(worst, std::abs(row.c_k - std::atanh(1.0 - std::ldexp(1.0, -row.k))));
  const auto first5 = report.first_crossing[2];
  const bool crossed_by_15 = report.rows.size() >= 15 && report.rows[14].c_k > 5.0 && first5 && *first5 <= 15;
  r.pass = worst <= 1e-9 && crossed_by_15;
  r.data = {{"K", 20},
            {"max_error", worst},
            {"c_15", report.rows.size() >= 15 ? report.rows[14].c_k : 0.0},
            {"first_crossing_5", first5 ? json(*first5) : json(nullptr)}};
  r.summary = "max |c_k - atanh(1-2^-k)| = " + fmt("%.1e", worst) + ", c_k > 5 first at k = " +
              (first5 ? std::to_string(*first5) : std::string("never"));
  return r;
}

CriterionResult exhaustion(std::uint64_t seed) {
  CriterionResult r{8, "exhaustion", true, {}, {}};
  const SymProduct g2(PlanarDomain::unit_disc(), 2);
  constexpr int kInterior = 10000, kTriples = 1000, kNearBoundary = 1000, kCircle = 64;

  int negative = 0;
  for (int i = 0; i < kInterior; ++i) {
    Rng rng = derive_rng(seed, 800, static_cast<std::uint64_t>(i));
    if (exhaustion_value(g2, random_g2_point(rng)) < 0.0) ++negative;
  }

  int sub_mean = 0;
  double worst_violation = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kTriples; ++i) {
    Rng rng = derive_rng(seed, 801, static_cast<std::uint64_t>(i));
    const ComplexPoint a = symmetrize(random_roots(rng, 2, 0.0, 0.97));
    Complex dir[] = {uniform_in_disc(rng), uniform_in_disc(rng)};
    const double norm = std::hypot(std::abs(dir[0]), std::abs(dir[1]));
    for (auto& d : dir) d /= norm;
    double rho = 0.5 * uniform01(rng) + 1e-3;
    std::vector<ComplexPoint> circle;
    for (;;) {
      circle.clear();
      for (int j = 0; j < kCircle; ++j) {
        const Complex e = std::polar(rho, 2.0 * std::numbers::pi * j / kCircle);
        circle.push_back(ComplexPoint{a[0] + e * dir[0], a[1] + e * dir[1]});
      }
      if (std::all_of(circle.begin(), circle.end(),
                      [&](const ComplexPoint& z) { return member(g2, z).state == Membership::In; }))
        break;
      rho *= 0.5;
    }
    double mean = 0.0;
    for (const auto& z : circle) mean += exhaustion_value(g2, z);
    mean /= kCircle;
    const double violation = exhaustion_value(g2, a) - mean;
    worst_violation = std::max(worst_violation, violation);
    if (violation <= 1e-6) ++sub_mean;
  }

  int near_ok = 0;
  for (int i = 0; i < kNearBoundary; ++i) {
    Rng rng = derive_rng(seed, 802, static_cast<std::uint64_t>(i));
    const double modulus = 1.0 - 1e-4 * uniform01(rng);
    const Complex roots[] = {std::polar(modulus, 2.0 * std::numbers::pi * uniform01(rng)), uniform_in_disc(rng)};
    const ComplexPoint z = symmetrize(roots);
    if (member(g2, z).state == Membership::In && exhaustion_value(g2, z) > -1e-3) ++near_ok;
  }

  r.pass = negative == kInterior && sub_mean == kTriples && near_ok == kNearBoundary;
  r.data = {{"interior_samples", kInterior}, {"negative", negative},  {"triples", kTriples},
            {"sub_mean_ok", sub_mean},       {"worst_violation", worst_violation},
            {"near_boundary", kNearBoundary}, {"near_boundary_ok", near_ok}};
  r.summary = "negative " + std::to_string(negative) + "/" + std::to_string(kInterior) + ", sub-mean " +
              std::to_string(sub_mean) + "/" + std::to_string(kTriples) + ", near boundary " +
              std::to_string(near_ok) + "/" + std::to_string(kNearBoundary);
  return r;
}

CriterionResult peak_verification(std::uint64_t seed) {
  CriterionResult r{9, "peak verification", false, {}, {}};
  const SymProduct g2(PlanarDomain::unit_disc(), 2);
  const auto candidate = symmetric_peak(g2.base(), 1.0, 0.0);
  const auto report = verify_peak(candidate, g2, 10000, ApproachSpec{20}, seed);
  bool approach_ok = true;
  for (const auto& a : report.approach)
    if (a.k >= 12 && std::abs(a.modulus - 1.0) > 1e-3) approach_ok = false;
  r.pass = report.pass && approach_ok && report.approach.size() >= 12;
  r.data = to_json(report);
  r.summary = std::string(report.pass ? "PASS" : "FAIL") + ", max interior modulus " +
              fmt("%.6f", report.max_interior_modulus) + ", |G(target) - 1| = " +
              fmt("%.1e", std::abs(report.target_value - 1.0));
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  switch (id) {
    case 1: return round_trip(seed);
    case 2: return arrangement_equivalence(seed);
    case 3: return linear_convexity(seed);
    case 4: return general_position(seed);
    case 5: return classification_table(seed);
    case 6: return metric_calibration(seed);
    case 7: return divergence(seed);
    case 8: return exhaustion(seed);
    case 9: return peak_verification(seed);
    default: throw ValidationError("acceptance: no in-process criterion " + std::to_string(id));
  }
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] criterion %2d  %-30s ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
  return head + r.summary;
}

}  // namespace symprod::cli
