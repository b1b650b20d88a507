#include "boundstate/wick/tilde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "boundstate/error.hpp"

namespace bsl::wick {

namespace {

using Field = AuxSymbol::Field;

bool fermionic(const AuxSymbol& s) { return s.field != Field::pair; }

auto sort_key(const AuxSymbol& s) { return std::make_tuple(static_cast<int>(s.field), s.first, s.second); }

void rename(SymbolicTerm& t, const std::string& from, const std::string& to) {
  auto swap_name = [&](std::string& s) {
    if (s == from) s = to;
  };
  for (auto& f : t.factors)
    for (auto& a : f.args) swap_name(a);
  for (auto& op : t.ops) {
    swap_name(op.first);
    swap_name(op.second);
  }
  t.summed.erase(from);
}

// Moves every annihilator to the right of every creator.
SymbolicSum normal_order(const SymbolicTerm& term) {
  SymbolicSum done, work{term};
  while (!work.empty()) {
    SymbolicTerm t = std::move(work.back());
    work.pop_back();
    std::size_t i = 0;
    while (i + 1 < t.ops.size() && !(!t.ops[i].dagger && t.ops[i + 1].dagger)) ++i;
    if (i + 1 >= t.ops.size()) {
      done.push_back(std::move(t));
      continue;
    }
    const AuxSymbol a = t.ops[i], b = t.ops[i + 1];
    if (a.field == b.field) {
      SymbolicTerm contracted = t;
      contracted.ops.erase(contracted.ops.begin() + static_cast<long>(i),
                           contracted.ops.begin() + static_cast<long>(i) + 2);
      if (a.field == Field::pair)
        contracted.factors.push_back({SymbolicFactor::Kind::pair_commutator, {a.first, a.second, b.first, b.second}});
      else
        contracted.factors.push_back({SymbolicFactor::Kind::delta, {a.first, b.first}});
      work.push_back(std::move(contracted));
    }
    std::swap(t.ops[i], t.ops[i + 1]);
    if (fermionic(a) && fermionic(b)) t.coefficient = -t.coefficient;
    work.push_back(std::move(t));
  }
  return done;
}

// Substitutes deltas that touch a summed variable; returns false if the term vanishes.
bool resolve_deltas(SymbolicTerm& t) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < t.factors.size(); ++k) {
      auto& f = t.factors[k];
      if (f.kind != SymbolicFactor::Kind::delta) continue;
      const std::string a = f.args[0], b = f.args[1];
      if (a == b) {
        t.factors.erase(t.factors.begin() + static_cast<long>(k));
        changed = true;
        break;
      }
      if (t.summed.count(b) || t.summed.count(a)) {
        t.factors.erase(t.factors.begin() + static_cast<long>(k));
        if (t.summed.count(b))
          rename(t, b, a);
        else
          rename(t, a, b);
        changed = true;
        break;
      }
    }
  }
  for (auto& f : t.factors)
    if (f.kind == SymbolicFactor::Kind::delta && f.args[1] < f.args[0]) std::swap(f.args[0], f.args[1]);
  return true;
}

// Sorts creators and annihilators separately (each block stays normal ordered);
// returns false when a repeated fermion operator kills the term.
bool canonical_order(SymbolicTerm& t) {
  auto sort_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = begin; j + 1 < end - (i - begin); ++j)
        if (sort_key(t.ops[j + 1]) < sort_key(t.ops[j])) {
          if (fermionic(t.ops[j]) && fermionic(t.ops[j + 1])) t.coefficient = -t.coefficient;
          std::swap(t.ops[j], t.ops[j + 1]);
        }
    for (std::size_t j = begin; j + 1 < end; ++j)
      if (fermionic(t.ops[j]) && sort_key(t.ops[j]) == sort_key(t.ops[j + 1])) return false;
    return true;
  };
  std::size_t split = 0;
  while (split < t.ops.size() && t.ops[split].dagger) ++split;
  return sort_range(0, split) && sort_range(split, t.ops.size());
}

std::string field_name(const AuxSymbol& s) {
  switch (s.field) {
    case Field::chi1: return "χ1";
    case Field::chi2: return "χ2";
    case Field::pair: return "φ̂";
  }
  return "";
}

std::string key_of(const SymbolicTerm& t) {
  SymbolicTerm copy = t;
  copy.coefficient = 1.0;
  std::sort(copy.factors.begin(), copy.factors.end(),
            [](const auto& a, const auto& b) { return std::tie(a.kind, a.args) < std::tie(b.kind, b.args); });
  return to_string(copy);
}

}  // namespace

SymbolicSum tilde_map(int species, bool dagger, const std::string& arg, const std::string& tag,
                      TildeConvention convention) {
  if (species != 1 && species != 2) throw ValidationError("tilde map is defined for species 1 and 2");
  const std::string dummy = arg + "'" + tag;
  SymbolicTerm bare{1.0, {}, {{species == 1 ? Field::chi1 : Field::chi2, dagger, arg, ""}}, {}};
  SymbolicTerm correction{1.0, {}, {}, {dummy}};
  if (species == 1) {
    // O1(v) = Σ_y φ̂(v, y) χ2†(y)
    const AuxSymbol pair{Field::pair, dagger, arg, dummy}, partner{Field::chi2, !dagger, dummy, ""};
    correction.ops = dagger ? std::vector<AuxSymbol>{partner, pair} : std::vector<AuxSymbol>{pair, partner};
  } else {
    // O2(v) = ∓ Σ_y χ1†(y) φ̂(y, v)
    const AuxSymbol pair{Field::pair, dagger, dummy, arg}, partner{Field::chi1, !dagger, dummy, ""};
    correction.ops = dagger ? std::vector<AuxSymbol>{pair, partner} : std::vector<AuxSymbol>{partner, pair};
    if (convention == TildeConvention::consistent) correction.coefficient = -1.0;
  }
  return {bare, correction};
}

SymbolicSum multiply(const SymbolicSum& a, const SymbolicSum& b) {
  SymbolicSum out;
  for (const auto& x : a)
    for (const auto& y : b) {
      SymbolicTerm t{x.coefficient * y.coefficient, x.factors, x.ops, x.summed};
      t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
      t.ops.insert(t.ops.end(), y.ops.begin(), y.ops.end());
      t.summed.insert(y.summed.begin(), y.summed.end());
      out.push_back(std::move(t));
    }
  return out;
}

SymbolicSum add(const SymbolicSum& a, const SymbolicSum& b) {
  SymbolicSum out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

SymbolicSum simplify(const SymbolicSum& sum) {
  std::map<std::string, SymbolicTerm> collected;
  std::vector<std::string> order;
  for (const auto& term : sum)
    for (auto& t : normal_order(term)) {
      if (!resolve_deltas(t) || !canonical_order(t)) continue;
      const std::string key = key_of(t);
      const auto it = collected.find(key);
      if (it == collected.end()) {
        order.push_back(key);
        collected.emplace(key, std::move(t));
      } else {
        it->second.coefficient += t.coefficient;
      }
    }
  SymbolicSum out;
  for (const auto& key : order)
    if (std::abs(collected.at(key).coefficient) > 1e-14) out.push_back(collected.at(key));
  return out;
}

SymbolicSum anticommutator(const SymbolicSum& a, const SymbolicSum& b) {
  return simplify(add(multiply(a, b), multiply(b, a)));
}

std::string to_string(const SymbolicTerm& term) {
  std::string out;
  const double c = term.coefficient;
  if (c == -1.0) out = "-";
  else if (c != 1.0) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g ", c);
    out = buf;
  }
  if (!term.summed.empty()) {
    out += "Σ_{";
    bool first = true;
    for (const auto& s : term.summed) {
      out += (first ? "" : ",") + s;
      first = false;
    }
    out += "} ";
  }
  for (const auto& f : term.factors) {
    if (f.kind == SymbolicFactor::Kind::delta)
      out += "δ(" + f.args[0] + "-" + f.args[1] + ") ";
    else
      out += "[φ̂(" + f.args[0] + "," + f.args[1] + "),φ̂†(" + f.args[2] + "," + f.args[3] + ")] ";
  }
  for (const auto& op : term.ops) {
    out += field_name(op) + (op.dagger ? "†" : "") + "(" + op.first;
    if (op.field == Field::pair) out += "," + op.second;
    out += ") ";
  }
  if (term.ops.empty() && term.factors.empty()) out += "1 ";
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string to_string(const SymbolicSum& sum) {
  if (sum.empty()) return "0";
  std::string out;
  for (const auto& t : sum) {
    std::string s = to_string(t);
    if (out.empty()) out = s;
    else if (!s.empty() && s[0] == '-') out += " - " + s.substr(1);
    else out += " + " + s;
  }
  return out;
}

}  // namespace bsl::wick
