#include <doctest.h>

#include <set>

#include "boundstate/cli/acceptance.hpp"
#include "boundstate/cli/commands.hpp"
#include "boundstate/cli/config.hpp"
#include "boundstate/error.hpp"
#include "boundstate/wick/expression.hpp"

using namespace bsl;
using namespace bsl::cli;

namespace {

RunConfig sample() {
  KeySpec points{"points", KeySpec::Kind::integer, "10", "", 1, 100, {}};
  KeySpec scale{"scale", KeySpec::Kind::real, "0.5", "", 0, 1, {}};
  KeySpec mode{"mode", KeySpec::Kind::choice, "a", "", 0, 0, {"a", "b"}};
  KeySpec name{"name", KeySpec::Kind::text, "", "", 0, 0, {}};
  KeySpec on{"on", KeySpec::Kind::flag, "false", "", 0, 0, {}};
  return RunConfig({points, scale, mode, name, on});
}

Json run(const std::string& command, const std::vector<std::pair<std::string, std::string>>& overrides) {
  const auto& c = find_command(command);
  RunConfig config(c.keys);
  for (const auto& [k, v] : overrides) config.set(k, v);
  return make_report(c, config, c.run(config));
}

}  // namespace

TEST_CASE("flat config text: comments, overrides, typed access") {
  auto c = sample();
  c.parse_text("# header\npoints = 42  # trailing\n\nmode=b\nname = two words\non = yes\n");
  CHECK(c.integer("points") == 42);
  CHECK(c.text("mode") == "b");
  CHECK(c.text("name") == "two words");
  CHECK(c.flag("on"));
  CHECK(c.real("scale") == 0.5);
  c.set("points", "7");
  CHECK(c.integer("points") == 7);
  CHECK(c.echo().dump() == R"({"points":7,"scale":0.5,"mode":"b","name":"two words","on":true})");
}

TEST_CASE("config rejects unknown keys and out-of-range values") {
  auto c = sample();
  CHECK_THROWS_AS(c.parse_text("bogus = 1"), ValidationError);
  CHECK_THROWS_AS(c.set("points", "0"), ValidationError);
  CHECK_THROWS_AS(c.set("points", "2.5"), ValidationError);
  CHECK_THROWS_AS(c.set("scale", "abc"), ValidationError);
  CHECK_THROWS_AS(c.set("mode", "c"), ValidationError);
  CHECK_THROWS_AS(c.set("on", "maybe"), ValidationError);
  CHECK_THROWS_AS(c.parse_text("points"), ValidationError);
  CHECK_THROWS_AS(c.load_file("/nonexistent/boundstate.cfg"), ValidationError);
}

TEST_CASE("list splitting and number text") {
  CHECK(split_list(" 1s , 2p ") == std::vector<std::string>{"1s", "2p"});
  CHECK(number_text(0.1) == "0.1");
  CHECK(number_text(6.5e-12) == "6.5e-12");
  CHECK(std::stod(number_text(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("every subcommand is registered with a formula-bearing result") {
  std::set<std::string> names;
  for (const auto& c : commands()) names.insert(c.name);
  CHECK(names == std::set<std::string>{"levels", "dipole", "emit", "photon-scatter", "escatter", "vdw",
                                       "fock-verify", "wick-check", "verify-all"});
  const auto report = run("emit", {{"from", "3p"}, {"to", "2s"}});
  CHECK(report["results"]["emission"].contains("formula"));
  CHECK(report["results"]["emission"]["rate_per_s"].get<double>() > 0.0);
  CHECK_THROWS_AS(find_command("plot"), ValidationError);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto a = run("levels", {{"mode", "analytic"}}).dump(2);
  const auto b = run("levels", {{"mode", "analytic"}}).dump(2);
  CHECK(a == b);
  const auto w1 = run("wick-check", {{"product", "psi1(x) psi1(y) psi1+(z) psi1+(w)"}}).dump();
  CHECK(w1 == run("wick-check", {{"product", "psi1(x) psi1(y) psi1+(z) psi1+(w)"}}).dump());
}

TEST_CASE("wick-check evaluates fully bound products against the Fock oracle") {
  const auto report = run("wick-check", {{"product", "psi1(x) psi1+(y)"}, {"bind", "x=2,y=2"}});
  const auto& w = report["results"]["wick"];
  CHECK(w["diagrams"] == 1);
  CHECK(w["kernel"] == "δ(x-y)");
  CHECK(w["value"]["re"].get<double>() == doctest::Approx(1.0));
  CHECK(w["deviation"].get<double>() < 1e-14);
}

TEST_CASE("verify-all report round-trips through JSON") {
  const auto report = run("verify-all", {{"only", "2,6,10"}});
  const auto parsed = Json::parse(report.dump());
  CHECK(parsed == report);
  CHECK(parsed["checks"].size() == 3);
  CHECK(parsed["exit_code"] == 0);
  CHECK(parsed["results"]["summary"]["passed"] == 3);
}

TEST_CASE("random products are balanced and reproducible") {
  const auto a = random_products(50, 8, 4, 3, 11);
  CHECK(a == random_products(50, 8, 4, 3, 11));
  for (const auto& text : a) {
    int balance1 = 0, balance2 = 0, count = 0;
    for (const auto& op : bsl::wick::parse_product(text)) {
      const int sign = bsl::wick::is_creator(op.kind) ? 1 : -1;
      const int s = bsl::wick::species(op.kind);
      if (s != 2) balance1 += sign;
      if (s != 1) balance2 += sign;
      ++count;
    }
    CHECK(balance1 == 0);
    CHECK(balance2 == 0);
    CHECK(count <= 8);
  }
}
