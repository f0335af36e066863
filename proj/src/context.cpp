#include "projclass/context.hpp"

#include <algorithm>

namespace projclass {

Context::Context(std::vector<std::string> vars, std::vector<std::string> params) : variables(std::move(vars)) {
  for (auto& p : params) parameters.emplace_back(std::move(p), ParamAssumption::Free);
}

bool Context::is_variable(const std::string& name) const {
  return std::find(variables.begin(), variables.end(), name) != variables.end();
}

bool Context::is_parameter(const std::string& name) const {
  return std::any_of(parameters.begin(), parameters.end(), [&](const auto& p) { return p.first == name; });
}

bool Context::declares(const std::string& name) const { return is_variable(name) || is_parameter(name); }

std::vector<std::string> Context::identifiers() const {
  std::vector<std::string> out = variables;
  for (const auto& p : parameters) out.push_back(p.first);
  return out;
}

Context& Context::add_parameter(const std::string& name, ParamAssumption a) {
  if (!declares(name)) parameters.emplace_back(name, a);
  return *this;
}

Context& Context::add_locus(const Expr& e) {
  if (e.is_number()) return *this;
  if (std::find(singular_loci.begin(), singular_loci.end(), e) == singular_loci.end()) singular_loci.push_back(e);
  return *this;
}

Context Context::with_loci(const std::vector<Expr>& extra) const {
  Context c = *this;
  for (const Expr& e : extra) c.add_locus(e);
  return c;
}

Expr Context::parse(const std::string& text) const { return parse_expr(text, identifiers()); }

}  // namespace projclass
