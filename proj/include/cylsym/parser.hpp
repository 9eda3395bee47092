#pragma once

#include <cstddef>
#include <set>
#include <string>

#include "cylsym/expr.hpp"

namespace cylsym {

struct ParseError : std::runtime_error {
  ParseError(std::size_t offset, const std::string& msg)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)),
        offset(offset),
        message(msg) {}
  std::size_t offset;
  std::string message;
};

struct UnknownIdentifierError : ParseError {
  UnknownIdentifierError(std::size_t offset, const std::string& ident,
                         const std::string& table)
      : ParseError(offset, "unknown identifier '" + ident +
                               "' (declared symbols: " + table + ")"),
        ident(ident) {}
  std::string ident;
};

// Declared scalar symbols. Jet coordinates (u, u_r, ..., u_zz), the
// unknown-coefficient names xi1..xi3/eta and function names are always
// recognized; theta is accepted as an alias for q.
struct SymbolTable {
  std::set<std::string> symbols{"r", "q", "z", "k"};
  std::string describe() const;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-'|'+')* base ('^' exponent)?
//   base   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//   exponent := signed integer or rational, optionally parenthesized
// Decimal literals are converted to exact rationals.
Expr parse(const std::string& text, const SymbolTable& table = SymbolTable{});

}  // namespace cylsym
