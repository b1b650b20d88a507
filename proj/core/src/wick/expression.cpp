#include "boundstate/wick/expression.hpp"

#include <cctype>

#include "boundstate/error.hpp"

namespace bsl::wick {

bool is_creator(OpKind kind) { return kind == OpKind::psi1_dag || kind == OpKind::psi2_dag || kind == OpKind::phi_dag; }

bool is_composite(OpKind kind) { return kind == OpKind::phi || kind == OpKind::phi_dag; }

int species(OpKind kind) {
  switch (kind) {
    case OpKind::psi1:
    case OpKind::psi1_dag: return 1;
    case OpKind::psi2:
    case OpKind::psi2_dag: return 2;
    default: return 0;
  }
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Product run() {
    Product out;
    int block = -1, blocks = 0;
    for (skip(); pos_ < text_.size(); skip()) {
      if (text_[pos_] == ':') {
        ++pos_;
        block = block < 0 ? blocks++ : -1;
        continue;
      }
      OpSymbol op = symbol();
      op.slot = static_cast<int>(out.size());
      op.block = block;
      op.tier = block >= 0 ? Tier::block : is_creator(op.kind) ? Tier::early : Tier::late;
      out.push_back(op);
    }
    if (block >= 0) fail("unterminated ':' block");
    if (out.empty()) fail("empty product");
    return out;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in \"" + text_ + "\"");
  }

  std::string word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string bracketed(char open, char close) {
    if (pos_ >= text_.size() || text_[pos_] != open) fail(std::string("expected '") + open + "'");
    ++pos_;
    skip();
    std::string inside = word();
    skip();
    if (inside.empty()) fail("empty argument");
    if (pos_ >= text_.size() || text_[pos_] != close) fail(std::string("expected '") + close + "'");
    ++pos_;
    return inside;
  }

  OpSymbol symbol() {
    const std::string name = word();
    const bool dagger = pos_ < text_.size() && text_[pos_] == '+';
    if (dagger) ++pos_;
    OpSymbol op{};
    if (name == "psi1") {
      op.kind = dagger ? OpKind::psi1_dag : OpKind::psi1;
    } else if (name == "psi2") {
      op.kind = dagger ? OpKind::psi2_dag : OpKind::psi2;
    } else if (name == "phi") {
      op.kind = dagger ? OpKind::phi_dag : OpKind::phi;
      op.label = bracketed('[', ']');
    } else {
      fail("unknown operator '" + name + "'");
    }
    op.arg = bracketed('(', ')');
    return op;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Product parse_product(const std::string& text) { return Parser(text).run(); }

std::string to_string(const OpSymbol& op) {
  std::string name;
  switch (op.kind) {
    case OpKind::psi1: name = "psi1"; break;
    case OpKind::psi2: name = "psi2"; break;
    case OpKind::psi1_dag: name = "psi1+"; break;
    case OpKind::psi2_dag: name = "psi2+"; break;
    case OpKind::phi: name = "phi"; break;
    case OpKind::phi_dag: name = "phi+"; break;
  }
  if (is_composite(op.kind)) name += "[" + op.label + "]";
  return name + "(" + op.arg + ")";
}

std::string to_string(const Product& product) {
  std::vector<std::string> tokens;
  int block = -1;
  for (const auto& op : product) {
    if (op.block != block) {
      if (block >= 0) tokens.push_back(":");
      if (op.block >= 0) tokens.push_back(":");
      block = op.block;
    }
    tokens.push_back(to_string(op));
  }
  if (block >= 0) tokens.push_back(":");
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

}  // namespace bsl::wick
