// Acceptance harness: one pass/fail line per criterion, details indented.
// With arguments, runs only the named criteria (useful for ctest's
// per-criterion entries); without, runs the whole suite in order.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "persuade/verify.hpp"

int main(int argc, char** argv) {
  using namespace persuade;
  AcceptanceOptions opt;

  std::vector<std::string> ids;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--list") {
      for (const auto& id : acceptance_ids()) std::printf("%s\n", id.c_str());
      return 0;
    }
    ids.push_back(arg);
  }
  if (ids.empty()) ids = acceptance_ids();

  bool all_ok = true;
  for (const auto& id : ids) {
    CriterionResult res;
    try {
      res = run_criterion(id, opt);
    } catch (const std::exception& e) {
      std::printf("[FAIL] %s — crashed: %s\n", id.c_str(), e.what());
      all_ok = false;
      continue;
    }
    std::printf("[%s] %s — %s (%.1fs)%s\n", res.pass ? "PASS" : "FAIL",
                res.id.c_str(), res.title.c_str(), res.seconds,
                res.expected_fail ? "  [documented known limitation]" : "");
    for (const auto& line : res.details) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
    if (!res.pass) all_ok = false;
  }
  return all_ok ? 0 : 1;
}
