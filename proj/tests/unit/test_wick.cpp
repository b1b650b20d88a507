#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "boundstate/error.hpp"
#include "boundstate/wick/contractions.hpp"
#include "boundstate/wick/tilde.hpp"

using namespace bsl;
using namespace bsl::wick;

namespace {

fock::LatticeConfig small_ring() { return {4, 1, 1, 1, fock::PairPotential::square_well(4, 4.0)}; }

std::string single_species(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += "psi1(a" + std::to_string(i) + ") ";
  for (int i = 0; i < n; ++i) s += "psi1+(b" + std::to_string(i) + ") ";
  return s;
}

// Balanced products: annihilators with random arguments followed by the
// matching creators in random order, optionally with a few extra random pairs.
std::string random_product(std::mt19937& rng, int labels) {
  static const char* ann[] = {"psi1", "psi2", "phi"};
  static const char* cre[] = {"psi1+", "psi2+", "phi+"};
  auto op = [&](const char* name, int kind, int site, int label) {
    std::string s = name;
    if (kind == 2) s += "[" + std::to_string(label) + "]";
    return s + "(" + std::to_string(site) + ") ";
  };
  const int pairs = 1 + static_cast<int>(rng() % 4);
  std::vector<std::string> left, right;
  for (int i = 0; i < pairs; ++i) {
    const int kind = static_cast<int>(rng() % 3), site = static_cast<int>(rng() % 4);
    const int label = static_cast<int>(rng() % labels);
    left.push_back(op(ann[kind], kind, site, label));
    // Perturb the creator's site half the time so that not every value is trivially nonzero.
    right.push_back(op(cre[kind], kind, rng() % 2 ? site : static_cast<int>(rng() % 4), label));
  }
  std::shuffle(right.begin(), right.end(), rng);
  std::string s;
  for (auto& x : left) s += x;
  for (auto& x : right) s += x;
  return s;
}

std::set<int> classes_of(const std::string& text) {
  const auto product = parse_product(text);
  std::set<int> out;
  for (const auto& d : enumerate_contractions(product)) {
    if (d.suppressed) continue;
    const auto c = probe_class(product, d);
    REQUIRE(c.has_value());
    out.insert(*c);
  }
  return out;
}

}  // namespace

TEST_CASE("products parse and print back") {
  const auto p = parse_product("phi[a](z) psi1(x) : psi1+(u) psi1(v) : psi2+(w) phi+[b](z2)");
  CHECK(p.size() == 6);
  CHECK(is_composite(p[0].kind));
  CHECK(is_creator(p[5].kind));
  CHECK(species(p[1].kind) == 1);
  CHECK(parse_product(to_string(p)).size() == 6);
  CHECK_THROWS_AS(parse_product("psi3(x)"), ParseError);
  CHECK_THROWS_AS(parse_product("psi1(x"), ParseError);
  CHECK_THROWS_AS(parse_product("psi1(x) : psi1+(y)"), ParseError);
}

TEST_CASE("2n single-species operators have n! complete contractions") {
  int factorial = 1;
  for (int n = 1; n <= 4; ++n) {
    factorial *= n;
    CHECK(enumerate_contractions(parse_product(single_species(n))).size() == static_cast<std::size_t>(factorial));
  }
  const auto single = enumerate_contractions(parse_product("psi1(x) psi1+(y)"));
  REQUIRE(single.size() == 1);
  CHECK(kernel_string(single[0]) == "δ(x-y)");
  CHECK(single[0].sign == 1);
  CHECK(enumerate_contractions(parse_product("psi1(x) psi2+(y)")).empty());
}

TEST_CASE("crossed contractions carry a minus sign") {
  const auto diagrams = enumerate_contractions(parse_product("psi1(a) psi1(b) psi1+(c) psi1+(d)"));
  REQUIRE(diagrams.size() == 2);
  std::multiset<int> signs;
  for (const auto& d : diagrams) signs.insert(d.sign);
  CHECK(signs == std::multiset<int>{-1, 1});
  for (const auto& d : diagrams) {
    const bool nested = kernel_string(d).find("δ(a-d)") != std::string::npos;
    CHECK(d.sign == (nested ? 1 : -1));
  }
}

TEST_CASE("vacuum values agree with operator matrices on the exact Fock space") {
  const auto config = small_ring();
  const auto spectrum = fock::solve_pair_problem(config);
  const int labels = static_cast<int>(spectrum.states.size());
  std::mt19937 rng(97);
  double worst = 0.0;
  int nonzero = 0;
  for (int i = 0; i < 200; ++i) {
    const auto product = parse_product(random_product(rng, labels));
    const cplx a = evaluate_vev(product, {}, spectrum, config);
    const cplx b = fock_vev(product, {}, spectrum, config);
    worst = std::max(worst, std::abs(a - b));
    nonzero += std::abs(b) > 1e-9;
  }
  CHECK(worst < 1e-12);
  CHECK(nonzero >= 50);
}

TEST_CASE("normal-ordered blocks are not contracted internally") {
  const auto config = small_ring();
  const auto spectrum = fock::solve_pair_problem(config);
  const auto p = parse_product("psi1(0) : psi1(1) psi1+(0) : psi1+(1)");
  CHECK(std::abs(evaluate_vev(p, {}, spectrum, config) - cplx(-1.0)) < 1e-14);
  CHECK(std::abs(fock_vev(p, {}, spectrum, config) - cplx(-1.0)) < 1e-14);
}

TEST_CASE("composite overlaps reduce to pair wavefunctions") {
  const auto config = small_ring();
  const auto spectrum = fock::solve_pair_problem(config);
  const auto norm = parse_product("phi[a](X) phi+[b](X)");
  Bindings b;
  b.positions["X"] = 1;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) {
      b.labels["a"] = a;
      b.labels["b"] = c;
      CHECK(std::abs(evaluate_vev(norm, b, spectrum, config) - cplx(a == c)) < 1e-12);
    }
  CHECK_THROWS_AS(evaluate_vev(norm, {}, spectrum, config), UnboundVariable);
}

TEST_CASE("same-side chains are flagged as suppressed") {
  const auto pair = enumerate_contractions(parse_product("psi1(x) psi2(y) phi+[a](z)"));
  REQUIRE(pair.size() == 1);
  CHECK(pair[0].suppressed);
  const auto composite = enumerate_contractions(parse_product("phi[a](z) phi+[b](w)"));
  REQUIRE(composite.size() == 1);
  CHECK_FALSE(composite[0].suppressed);
}

TEST_CASE("density-operator sandwiches realise all five contraction classes") {
  const std::string block = " : psi1+(u) psi1(v) : ";
  CHECK(classes_of("psi1(x)" + block + "psi1+(x2)") == std::set<int>{1});
  CHECK(classes_of("psi1(x) psi2(w)" + block + "phi+[b](z2)") == std::set<int>{2});
  CHECK(classes_of("phi[a](z)" + block + "psi2+(w2) psi1+(x2)") == std::set<int>{3});
  CHECK(classes_of("phi[a](z)" + block + "phi+[b](z2)") == std::set<int>{4});
  CHECK(classes_of("phi[a](z) psi2(w)" + block + "psi2+(w2) phi+[b](z2)").count(5) == 1);
}

TEST_CASE("symbolic tilde fields") {
  const auto t1 = tilde_map(1, false, "x", "1");
  const auto t2 = tilde_map(2, false, "y", "2");
  CHECK(anticommutator(t1, t2).empty());
  CHECK(anticommutator(t1, tilde_map(1, false, "y", "2")).empty());
  CHECK(anticommutator(t2, tilde_map(2, false, "x", "1")).empty());

  const auto literal = anticommutator(tilde_map(1, false, "x", "1", TildeConvention::literal),
                                      tilde_map(2, false, "y", "2", TildeConvention::literal));
  REQUIRE(literal.size() == 1);
  CHECK(literal[0].coefficient == doctest::Approx(2.0));

  const auto density = simplify(multiply(tilde_map(1, true, "u", "1"), tilde_map(1, false, "v", "2")));
  CHECK(density.size() == 5);
}
