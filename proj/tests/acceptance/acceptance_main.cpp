// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: acceptance <path-to-symprod-cli> [work-dir]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "acceptance.hpp"

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using symprod::cli::CriterionResult;
  if (argc < 2) {
    std::cerr << "usage: acceptance <symprod-cli> [work-dir]\n";
    return 2;
  }
  const std::filesystem::path cli = argv[1];
  const std::filesystem::path work = argc > 2 ? argv[2] : std::filesystem::temp_directory_path();
  std::filesystem::create_directories(work);

  bool all = true;
  auto report = [&all](const CriterionResult& r, double seconds) {
    char t[32];
    std::snprintf(t, sizeof t, "  (%.1f s)", seconds);
    std::cout << symprod::cli::format_line(r) << t << std::endl;
    all = all && r.pass && seconds < 60.0;
  };

  for (int id = 1; id <= symprod::cli::kInProcessCriteria; ++id) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = symprod::cli::run_criterion(id, 0);
    report(r, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }

  int run_index = 0;
  const auto start = std::chrono::steady_clock::now();
  const auto determinism = symprod::cli::determinism_check([&] {
    const auto out = work / ("selftest_run" + std::to_string(run_index++) + ".json");
    const std::string cmd = "\"" + cli.string() + "\" selftest --seed 0 --out \"" + out.string() + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) return std::string();
    return read_file(out);
  });
  report(determinism, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

  std::cout << (all ? "acceptance: all criteria PASS" : "acceptance: FAIL") << std::endl;
  return all ? 0 : 1;
}
