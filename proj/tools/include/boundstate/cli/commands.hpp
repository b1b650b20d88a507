#pragma once

#include <string>
#include <vector>

#include "boundstate/cli/config.hpp"

namespace bsl::cli {

// Tabular output written next to the JSON report as <stem>.<name>.csv.
struct Sidecar {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  Json results = Json::object();
  std::vector<Sidecar> sidecars;
  Json checks = Json::array();
  int exit_code = 0;
};

struct Command {
  std::string name;
  std::string summary;
  std::vector<KeySpec> keys;
  std::string positional;  // key filled by a bare argument, if any
  Outcome (*run)(const RunConfig&);
};

const std::vector<Command>& commands();
const Command& find_command(const std::string& name);

// Full report: command, inputs echo, results, checks.
Json make_report(const Command& command, const RunConfig& config, const Outcome& outcome);

// Shortest decimal that round-trips, "." separator.
std::string number_text(double x);
std::string to_csv(const Sidecar& sidecar);

}  // namespace bsl::cli
