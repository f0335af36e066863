#pragma once

#include <string>
#include <utility>
#include <vector>

#include "projclass/expr.hpp"

namespace projclass {

enum class ParamAssumption { Free, NonZero };

/// Declared identifiers of a problem: coordinate variables, parameters and
/// known singular loci (expressions that must not vanish at sample points).
struct Context {
  std::vector<std::string> variables;
  std::vector<std::pair<std::string, ParamAssumption>> parameters;
  std::vector<Expr> singular_loci;

  Context() = default;
  Context(std::vector<std::string> vars, std::vector<std::string> params = {});

  bool declares(const std::string& name) const;
  bool is_variable(const std::string& name) const;
  bool is_parameter(const std::string& name) const;
  /// Variables followed by parameters.
  std::vector<std::string> identifiers() const;
  Expr var(std::size_t i) const { return sym(variables.at(i)); }

  Context& add_parameter(const std::string& name, ParamAssumption a = ParamAssumption::Free);
  Context& add_locus(const Expr& e);
  Context with_loci(const std::vector<Expr>& extra) const;

  /// Parses an expression over the declared identifiers.
  Expr parse(const std::string& text) const;
};

/// Parses `text` against the grammar
///   expr := term (("+"|"-") term)*;  term := factor (("*"|"/") factor)*
///   factor := "-"? atom ("^" exponent)?
///   atom := NUMBER | IDENT | FUNC "(" expr ")" | "(" expr ")"
///   exponent := NUMBER | "(" "-"? NUMBER ("/" NUMBER)? ")"
/// with FUNC in {ln, exp, sin, cos, sqrt}.
Expr parse_expr(const std::string& text, const std::vector<std::string>& declared);

}  // namespace projclass
