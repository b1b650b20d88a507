// Acceptance runner: one line per criterion, nonzero exit when any fails.
// An optional argument names a file for the JSON report.
#include <fstream>
#include <iomanip>
#include <iostream>

#include "boundstate/cli/acceptance.hpp"
#include "boundstate/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace bsl::cli;
  const auto criteria = run_acceptance(AcceptanceOptions{});
  int failed = 0;
  Json report = Json::array();
  for (const auto& c : criteria) {
    failed += !c.pass;
    std::cout << (c.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.id << "  " << c.name
              << "  value=" << number_text(c.value) << " bound=" << number_text(c.bound) << "  runtime=" << std::fixed
              << std::setprecision(2) << c.runtime_s << "s (limit " << std::setprecision(0) << c.runtime_limit_s
              << "s)" << std::defaultfloat;
    if (!c.error.empty()) std::cout << "  " << c.error;
    std::cout << '\n';
    report.push_back(criterion_json(c));
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  if (argc > 1) std::ofstream(argv[1]) << report.dump(2) << '\n';
  return failed == 0 ? 0 : 1;
}
