#pragma once

#include <optional>
#include <string>
#include <vector>

#include "boundstate/atoms/states.hpp"
#include "boundstate/cli/config.hpp"
#include "boundstate/fock/checks.hpp"

namespace bsl::cli {

struct Criterion {
  int id = 0;
  std::string name;
  std::string formula;
  bool pass = false;
  double value = 0.0;  // the headline deviation or measured quantity
  double bound = 0.0;
  double runtime_s = 0.0;
  double runtime_limit_s = 0.0;
  std::string error;        // "validation: ..." or "numerical: ..." when the check threw
  Json diagnostics = Json::object();
};

struct AcceptanceOptions {
  atoms::GridOptions grid;
  fock::LatticeConfig lattice;  // criteria 7 and 9
  int random_products = 200;
  unsigned seed = 20240917;
  bool parallel = true;
};

inline constexpr int criterion_count = 10;

// Runs the selected criteria (all when `only` is empty); results are ordered by id.
std::vector<Criterion> run_acceptance(const AcceptanceOptions& options, const std::vector<int>& only = {});

// Report rows as JSON; wall-clock times are left out so the output is reproducible.
Json criterion_json(const Criterion& c);

// Lattice structure checks shared by fock-verify and the acceptance run.
struct SuiteEntry {
  fock::Report report;
  bool required = true;  // informational entries never fail the suite
};

struct FockSuiteOptions {
  fock::LatticeConfig config;
  std::vector<double> sweep_depths{8.0, 16.0, 32.0, 64.0};
  int tilde_sites = 8;
  double exact_bound = 1e-10;  // for fermion-composite sectors with an on-site well
};

std::vector<SuiteEntry> fock_structure_suite(const FockSuiteOptions& options);

// Boost phase laws for velocities 2π k / L, one entry per k.
std::vector<SuiteEntry> boost_suite(const fock::LatticeConfig& config, const std::vector<int>& steps);

Json report_json(const SuiteEntry& entry);

// Products with balanced species content over sites [0, sites) and composite labels [0, labels).
// Every second product is built as annihilators followed by a shuffled set of the
// matching creators so that a good share of the expectation values are nonzero.
std::vector<std::string> random_products(int count, int max_operators, int sites, int labels, unsigned seed);

}  // namespace bsl::cli
