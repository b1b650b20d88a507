#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "boundstate/cli/acceptance.hpp"
#include "boundstate/cli/commands.hpp"
#include "boundstate/error.hpp"

namespace {

using namespace bsl::cli;

struct Invocation {
  std::string config_path;
  std::string out_path;
  std::string csv_prefix;
  bool json = false;
  std::vector<std::string> overrides;
  std::map<std::string, std::string> flags;  // key -> value given on the command line
};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bsl::ValidationError("cannot write '" + path.string() + "'");
  out << text;
}

std::string csv_stem(const Invocation& inv) {
  if (!inv.csv_prefix.empty()) return inv.csv_prefix;
  if (inv.out_path.empty()) return {};
  std::filesystem::path p(inv.out_path);
  return (p.parent_path() / p.stem()).string();
}

void print_criteria(const Json& report) {
  for (const auto& c : report["checks"]) {
    std::cout << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  [" << c["id"].get<int>() << "] "
              << c["name"].get<std::string>() << "  value=" << number_text(c["value"].get<double>())
              << " bound=" << number_text(c["bound"].get<double>());
    if (c.contains("error")) std::cout << "  (" << c["error"].get<std::string>() << ")";
    std::cout << '\n';
  }
}

int execute(const Command& command, const Invocation& inv) {
  RunConfig config(command.keys);
  if (!inv.config_path.empty()) config.load_file(inv.config_path);
  for (const auto& item : inv.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw bsl::ValidationError("--set expects key=value, got '" + item + "'");
    config.set(trim(item.substr(0, eq)), item.substr(eq + 1));
  }
  for (const auto& [key, value] : inv.flags) config.set(key, value);

  const Outcome outcome = command.run(config);
  const Json report = make_report(command, config, outcome);
  const std::string text = report.dump(2) + "\n";

  if (!inv.out_path.empty()) write_file(inv.out_path, text);
  if (command.name == "verify-all" && !inv.json) {
    print_criteria(report);
  } else if (inv.out_path.empty()) {
    std::cout << text;
  }
  if (const auto stem = csv_stem(inv); !stem.empty())
    for (const auto& s : outcome.sidecars) write_file(stem + "." + s.name + ".csv", to_csv(s));
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-state field theory toolkit: hydrogenic atoms, radiative processes, dispersion forces, "
               "lattice Fock-space and Wick checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "boundstate 1.0");

  Invocation inv;
  std::vector<std::pair<const Command*, CLI::App*>> subs;
  for (const auto& command : commands()) {
    auto* sub = app.add_subcommand(command.name, command.summary);
    sub->add_option("--config", inv.config_path, "flat key=value file (# comments)")->check(CLI::ExistingFile);
    sub->add_option("--out", inv.out_path, "write the JSON report here instead of stdout");
    sub->add_option("--csv", inv.csv_prefix, "prefix for CSV sidecars (default: the --out path without extension)");
    sub->add_flag("--json", inv.json, "print the JSON report (verify-all prints one line per criterion otherwise)");
    sub->add_option("--set", inv.overrides, "override any key, key=value; repeatable");
    for (const auto& key : command.keys) {
      std::string names = "--" + key.name;
      if (key.name.find('_') != std::string::npos) {
        std::string dashed = key.name;
        std::replace(dashed.begin(), dashed.end(), '_', '-');
        names += ",--" + dashed;
      }
      if (key.name == command.positional) names = key.name + "," + names;
      std::string help = key.help + " [default: " + (key.fallback.empty() ? "none" : key.fallback) + "]";
      sub->add_option_function<std::string>(
          names, [&inv, name = key.name](const std::string& v) { inv.flags[name] = v; }, help);
    }
    subs.emplace_back(&command, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& [command, sub] : subs)
      if (sub->parsed()) return execute(*command, inv);
  } catch (const bsl::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bsl::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
