#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "projclass/bigfloat.hpp"

namespace projclass {

enum class FuncKind : std::uint8_t { Ln, Exp, Sin, Cos };

struct ExprNode;

/// Immutable, normalized symbolic expression.
///
/// Every value is produced by the smart constructors below, which keep
/// sums flat and sorted with like terms combined, products as a rational
/// coefficient times sorted powers with equal bases merged, and products of
/// sums expanded within fixed size limits.
class Expr {
 public:
  enum class Kind : std::uint8_t { Num, Sym, Func, Pow, Mul, Add };

  Expr();
  Expr(int v);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& q);  // NOLINT(google-explicit-constructor)
  static Expr symbol(const std::string& name);

  Kind kind() const;
  bool is_number() const { return kind() == Kind::Num; }
  bool is_zero() const;
  bool is_one() const;

  /// Num value, Mul coefficient, or Pow exponent.
  const Rational& number() const;
  const std::string& name() const;
  FuncKind func() const;
  /// Add terms, Mul factors, Pow base, or Func argument.
  const std::vector<Expr>& args() const;
  const Expr& base() const { return args()[0]; }
  const Rational& exponent() const { return number(); }

  std::size_t hash() const;
  std::uint64_t symbol_mask() const;
  /// Conservative: may report true for an absent symbol, never false for a present one.
  bool may_depend_on(const std::string& name) const;
  const ExprNode* node() const { return n_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : n_(std::move(n)) {}
  std::shared_ptr<const ExprNode> n_;
  friend struct ExprFactory;
};

/// Total structural order used for canonical sorting.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

std::uint64_t symbol_bit(const std::string& name);

Expr sym(const std::string& name);
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const Rational& q);
Expr ln(const Expr& u);
Expr exp(const Expr& u);
Expr sin(const Expr& u);
Expr cos(const Expr& u);
Expr sqrt(const Expr& u);
Expr func(FuncKind f, const Expr& u);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

Expr differentiate(const Expr& e, const std::string& var);
Expr substitute(const Expr& e, const std::map<std::string, Expr>& values);
std::set<std::string> free_symbols(const Expr& e);
bool depends_on(const Expr& e, const std::string& var);
/// Number of distinct nodes in the expression DAG.
std::size_t node_count(const Expr& e);

/// Splits a term into its rational coefficient and the remaining monomial.
std::pair<Rational, Expr> split_coefficient(const Expr& term);
/// Splits a factor into base and exponent (exponent 1 for non-powers).
std::pair<Expr, Rational> split_power(const Expr& factor);

std::string to_string(const Expr& e);
std::string to_string(const Rational& q);
std::string func_name(FuncKind f);

/// Reads a rational from "p", "p/q", "-p/q" or a decimal such as "0.25".
Rational parse_rational(const std::string& text);

/// Exact identity test in the field of rational functions; nullopt when the
/// expression leaves that field or exceeds the size budget.
std::optional<bool> exact_rational_zero(const Expr& e, std::size_t term_budget = 4000);

}  // namespace projclass
