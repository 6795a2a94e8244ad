#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "acceptance.hpp"
#include "json_io.hpp"
#include "symprod/errors.hpp"
#include "symprod/invmetrics.hpp"
#include "symprod/peaks.hpp"
#include "symprod/symgeo.hpp"
#include "symprod/sympoly.hpp"

namespace symprod::cli {

namespace {

struct Request {
  std::string command;
  std::string domain = R"({"kind":"unit_disc"})";
  std::size_t n = 2;
  std::string point;
  std::string pair;
  std::uint64_t seed = 0;
  int samples = -1;
  std::size_t budget = 4000;
  std::string out;
  double tolerance = kDefaultBoundaryTolerance;
  int K = 20;
};

PlanarDomain domain_of(const Request& q) { return domain_from_json(parse_flag(q.domain, "--domain")); }

std::vector<Complex> point_values(const Request& q) {
  if (q.point.empty()) throw ValidationError("--point is required for " + q.command);
  return complex_list_from_json(parse_flag(q.point, "--point"));
}

ComplexPoint point_of(const Request& q) { return ComplexPoint(point_values(q)); }

std::string default_out(const std::string& command, const char* ext) { return "symprod_" + command + "." + ext; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("--out: cannot open " + path + " for writing");
  f << text;
}

json header(const Request& q) { return {{"command", q.command}, {"seed", q.seed}}; }

void emit(const Request& q, json body, const std::string& summary) {
  json artifact = header(q);
  artifact.update(body);
  const std::string path = q.out.empty() ? default_out(q.command, "json") : q.out;
  write_file(path, artifact.dump(2) + "\n");
  std::cout << summary << "\n" << "wrote " << path << "\n";
}

int cmd_roots(const Request& q) {
  const ComplexPoint z = point_of(q);
  const RootMultiset roots = roots_of_point(z);
  emit(q, {{"point", to_json(z)}, {"roots", to_json(roots.roots())}, {"collision_gap", roots.collision_gap()}},
       std::to_string(roots.size()) + " roots, collision gap " + std::to_string(roots.collision_gap()));
  return kExitOk;
}

int cmd_symmetrize(const Request& q) {
  const auto roots = point_values(q);
  const ComplexPoint z = symmetrize(roots);
  emit(q, {{"roots", to_json(roots)}, {"point", to_json(z)}}, "symmetrized " + std::to_string(roots.size()) + " roots");
  return kExitOk;
}

int cmd_member(const Request& q) {
  const SymProduct s(domain_of(q), q.n);
  const auto [verdict, roots] = member_with_roots(s, point_of(q), q.tolerance);
  emit(q,
       {{"domain", to_json(s.base())},
        {"n", s.n()},
        {"state", to_string(verdict.state)},
        {"margin", verdict.margin},
        {"roots", to_json(roots.roots())}},
       to_string(verdict.state) + " (margin " + std::to_string(verdict.margin) + ")");
  return kExitOk;
}

int cmd_separate(const Request& q) {
  const SymProduct s(domain_of(q), q.n);
  const Hyperplane h = separating_hyperplane(s, point_of(q), q.tolerance);
  emit(q, {{"hyperplane", to_json(h)}},
       "separating hyperplane with witness " + to_json(h.witness()).dump());
  return kExitOk;
}

int cmd_arrangement(const Request& q) {
  const PlanarDomain d = domain_of(q);
  if (!d.has_punctures()) throw ValidationError("arrangement: the domain has no punctures");
  const auto arr = arrangement(d.punctures(), q.n);
  json planes = json::array();
  for (const auto& h : arr.hyperplanes) planes.push_back(to_json(h));
  emit(q,
       {{"hyperplanes", planes},
        {"general_position", arr.report.general_position()},
        {"subsets_checked", arr.report.subsets_checked},
        {"failures", arr.report.failures},
        {"smallest_ratio", arr.report.smallest_ratio}},
       std::to_string(arr.hyperplanes.size()) + " hyperplanes, general position: " +
           (arr.report.general_position() ? "yes" : "no"));
  return kExitOk;
}

int cmd_classify(const Request& q) {
  const auto c = classify(SymProduct(domain_of(q), q.n));
  emit(q, to_json(c), to_string(c.verdict) + ": " + c.reason);
  return kExitOk;
}

int cmd_distance(const Request& q) {
  if (q.pair.empty()) throw ValidationError("--pair is required for distance");
  const json pair = parse_flag(q.pair, "--pair");
  if (!pair.is_array() || pair.size() != 2) throw ValidationError("--pair must hold exactly two points");
  const SymProduct s(domain_of(q), q.n);
  const ComplexPoint z(complex_list_from_json(pair[0]));
  const ComplexPoint w(complex_list_from_json(pair[1]));
  DiscSearchOptions opts;
  opts.budget = q.budget;
  opts.seed = q.seed;
  DistanceBound bound = lempert_upper_disc_search(s, z, w, opts);
  const DistanceBound lower = carath_lower(s, z, w);
  bound.lower = lower.lower;
  bound.lower_cert = lower.lower_cert;
  char line[128];
  std::snprintf(line, sizeof line, "%.17g <= c <= k <= l <= %.17g", bound.lower, bound.upper);
  emit(q, to_json(bound), line);
  return kExitOk;
}

int cmd_exhaust(const Request& q) {
  const SymProduct s(domain_of(q), q.n);
  const ComplexPoint z = point_of(q);
  const double v = exhaustion_value(s, z);
  emit(q, {{"point", to_json(z)}, {"value", v}}, "v = " + std::to_string(v));
  return kExitOk;
}

int cmd_peak_verify(const Request& q) {
  const SymProduct s(domain_of(q), q.n);
  if (s.n() != 2) throw UnsupportedError("peak-verify: explicit candidates exist only for n = 2");
  const auto roots = q.point.empty() ? std::vector<Complex>{1.0, 0.0} : point_values(q);
  if (roots.size() != 2) throw ValidationError("peak-verify: --point must hold the two roots [z1, z2]");
  const auto candidate = symmetric_peak(s.base(), roots[0], roots[1]);
  const auto report = verify_peak(candidate, s, q.samples < 0 ? 10000 : q.samples, ApproachSpec{}, q.seed);
  emit(q, to_json(report),
       std::string(report.pass ? "PASS" : "FAIL") + ", max interior modulus " +
           std::to_string(report.max_interior_modulus));
  return report.pass ? kExitOk : kExitNumerical;
}

int cmd_diverge(const Request& q) {
  const SymProduct s(domain_of(q), q.n);
  const ComplexPoint base = q.point.empty() ? ComplexPoint{0.0, 0.0} : point_of(q);
  const auto report = divergence_probe(s, base, SequenceSpec{}, q.K);
  std::string csv = "k,c_k,crossed_1,crossed_2,crossed_5\n";
  char line[128];
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%d,%.17g,%d,%d,%d\n", row.k, row.c_k, row.crossed[0] ? 1 : 0,
                  row.crossed[1] ? 1 : 0, row.crossed[2] ? 1 : 0);
    csv += line;
  }
  const std::string path = q.out.empty() ? default_out(q.command, "csv") : q.out;
  write_file(path, csv);
  std::cout << report.rows.size() << " rows";
  for (std::size_t t = 0; t < 3; ++t) {
    std::cout << ", first c_k > " << DivergenceReport::kThresholds[t] << ": ";
    if (report.first_crossing[t]) std::cout << "k = " << *report.first_crossing[t];
    else std::cout << "none";
  }
  std::cout << "\nwrote " << path << "\n";
  return kExitOk;
}

json suite_json(std::uint64_t seed, std::vector<CriterionResult>& results) {
  json criteria = json::array();
  results.clear();
  for (int id = 1; id <= kInProcessCriteria; ++id) {
    results.push_back(run_criterion(id, seed));
    const auto& r = results.back();
    criteria.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary}, {"data", r.data}});
  }
  return criteria;
}

int cmd_selftest(const Request& q) {
  std::vector<CriterionResult> results;
  json criteria = suite_json(q.seed, results);
  for (const auto& r : results) std::cout << format_line(r) << std::endl;

  const std::string first = criteria.dump();
  const auto determinism = determinism_check([&, first_run = true]() mutable {
    if (first_run) {
      first_run = false;
      return first;
    }
    std::vector<CriterionResult> again;
    return suite_json(q.seed, again).dump();
  });
  std::cout << format_line(determinism) << std::endl;
  results.push_back(determinism);
  criteria.push_back({{"id", determinism.id},
                      {"name", determinism.name},
                      {"pass", determinism.pass},
                      {"summary", determinism.summary},
                      {"data", determinism.data}});

  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  emit(q, {{"criteria", criteria}, {"pass", all}}, all ? "selftest PASS" : "selftest FAIL");
  return all ? kExitOk : kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"symprod: symmetric products of planar domains"};
  app.require_subcommand(1);
  Request q;

  struct Flags {
    bool domain, n, point, pair, samples, budget, tolerance, K;
  };
  auto add = [&](const std::string& name, const std::string& help, Flags f) {
    auto* sub = app.add_subcommand(name, help);
    if (f.domain) sub->add_option("--domain", q.domain, "planar domain as JSON");
    if (f.n) sub->add_option("--n", q.n, "symmetric power")->check(CLI::Range(1, 16));
    if (f.point) sub->add_option("--point", q.point, "list of [re, im] pairs");
    if (f.pair) sub->add_option("--pair", q.pair, "two points, each a list of [re, im] pairs");
    if (f.samples) sub->add_option("--samples", q.samples, "number of random samples");
    if (f.budget) sub->add_option("--budget", q.budget, "objective evaluations for the disc search");
    if (f.tolerance) sub->add_option("--tolerance", q.tolerance, "boundary tolerance");
    if (f.K) sub->add_option("--K", q.K, "number of sequence terms");
    sub->add_option("--seed", q.seed, "64-bit seed");
    sub->add_option("--out", q.out, "artifact path");
    sub->callback([&q, name] { q.command = name; });
  };
  //                                                     domain n  point  pair  samples budget tol   K
  add("roots", "roots of p_z for a point z", {false, false, true, false, false, false, false, false});
  add("symmetrize", "elementary symmetric coordinates of roots", {false, false, true, false, false, false, false, false});
  add("member", "membership in S_n(D)", {true, true, true, false, false, false, true, false});
  add("separate", "separating hyperplane at an exterior point", {true, true, true, false, false, false, true, false});
  add("arrangement", "puncture hyperplanes and general position", {true, true, false, false, false, false, false, false});
  add("classify", "hyperbolicity and completeness verdict", {true, true, false, false, false, false, false, false});
  add("distance", "invariant distance bounds", {true, true, false, true, false, true, false, false});
  add("exhaust", "negative plurisubharmonic exhaustion", {true, true, true, false, false, false, false, false});
  add("peak-verify", "composed peak function check", {true, true, true, false, true, false, false, false});
  add("diverge", "Caratheodory divergence probe (CSV)", {true, true, true, false, false, false, false, true});
  add("selftest", "acceptance suite", {false, false, false, false, false, false, false, false});

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (q.command == "roots") return cmd_roots(q);
    if (q.command == "symmetrize") return cmd_symmetrize(q);
    if (q.command == "member") return cmd_member(q);
    if (q.command == "separate") return cmd_separate(q);
    if (q.command == "arrangement") return cmd_arrangement(q);
    if (q.command == "classify") return cmd_classify(q);
    if (q.command == "distance") return cmd_distance(q);
    if (q.command == "exhaust") return cmd_exhaust(q);
    if (q.command == "peak-verify") return cmd_peak_verify(q);
    if (q.command == "diverge") return cmd_diverge(q);
    if (q.command == "selftest") return cmd_selftest(q);
  } catch (const RootSolveError& e) {
    std::cerr << "numerical error: " << e.what() << "\nbest residuals:";
    for (double r : e.residuals()) std::cerr << " " << r;
    std::cerr << "\n";
    return kExitNumerical;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace symprod::cli
