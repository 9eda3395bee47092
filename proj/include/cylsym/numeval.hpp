#pragma once

#include <map>
#include <string>

#include "cylsym/expr.hpp"

namespace cylsym {

struct UnboundSymbolError : ExprError {
  explicit UnboundSymbolError(const std::string& name)
      : ExprError("unbound symbol: " + name) {}
};
struct EvalDomainError : ExprError {
  using ExprError::ExprError;
};

struct EvalEnv {
  std::map<std::string, double> symbols;  // r, q, z, k, c1, ...
  std::map<JetIndex, double> jets;        // u and derivative coordinates

  EvalEnv& set(const std::string& name, double v) {
    symbols[name] = v;
    return *this;
  }
  EvalEnv& set_u(double v) {
    jets[JetIndex{}] = v;
    return *this;
  }
};

// IEEE double evaluation; BesselJ/BesselY through the series implementation.
// Throws UnboundSymbolError / EvalDomainError.
double eval_expr(const Expr& e, const EvalEnv& env);

}  // namespace cylsym
