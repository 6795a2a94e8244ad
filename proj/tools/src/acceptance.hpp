#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace symprod::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  nlohmann::json data;
};

/// Criteria 1..9 of the acceptance suite, evaluated in process.  Every
/// result is a pure function of (id, seed).
inline constexpr int kInProcessCriteria = 9;

CriterionResult run_criterion(int id, std::uint64_t seed);

/// Criterion 10: the selftest artifact is a pure function of the seed.
/// `produce` runs the selftest once and returns the artifact bytes.
template <class Produce>
CriterionResult determinism_check(Produce&& produce) {
  const std::string first = produce();
  const std::string second = produce();
  CriterionResult r{10, "determinism", !first.empty() && first == second, {}, {}};
  r.data = {{"bytes", first.size()}, {"identical", first == second}};
  r.summary = r.pass ? "two selftest runs produced identical artifacts (" + std::to_string(first.size()) + " bytes)"
                     : "selftest artifacts differ between runs";
  return r;
}

std::string format_line(const CriterionResult& r);

}  // namespace symprod::cli
