#pragma once

#include <optional>
#include <string>

#include "projclass/expr.hpp"

namespace projclass {

/// Termwise antiderivative for sums of c*u^q and c*exp(u) with u affine in
/// `var`, times factors free of `var`. Returns nullopt for anything else.
std::optional<Expr> antiderivative(const Expr& e, const std::string& var);

}  // namespace projclass
