#pragma once

#include <string>
#include <vector>

namespace bsl::wick {

enum class OpKind { psi1, psi2, psi1_dag, psi2_dag, phi, phi_dag };

// When the operator acts in the mixed T-product: annihilators outside a
// normal-ordered block at +0, creators at -0, block members at 0.
enum class Tier { late, early, block };

struct OpSymbol {
  OpKind kind;
  std::string arg;    // position variable or integer literal
  std::string label;  // composite label variable or literal; empty for elementary operators
  int slot = 0;
  Tier tier = Tier::late;
  int block = -1;     // index of the enclosing : ... : block, -1 outside
};

using Product = std::vector<OpSymbol>;

bool is_creator(OpKind kind);
bool is_composite(OpKind kind);
// 1 or 2 for elementary operators, 0 for composites.
int species(OpKind kind);

// Grammar: whitespace-separated `psi1(x)`, `psi2+(y)`, `phi[a](z)`, `phi+[a](z)`;
// a `:` opens or closes a normal-ordered block. Throws ParseError.
Product parse_product(const std::string& text);
std::string to_string(const OpSymbol& op);
std::string to_string(const Product& product);

}  // namespace bsl::wick
