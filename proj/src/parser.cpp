#include <algorithm>
#include <cctype>

#include "projclass/context.hpp"

namespace projclass {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      bool dot = false;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || (s[i] == '.' && !dot))) {
        if (s[i] == '.') dot = true;
        ++i;
      }
      std::string text = s.substr(start, i - start);
      if (text == ".") throw ParseError("malformed number", start);
      out.push_back({Tok::Number, text, start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, s.substr(start, i - start), start});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({k, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& declared)
      : toks_(lex(text)), declared_(declared) {}

  Expr parse() {
    Expr e = expr();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++i_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) throw ParseError(std::string("expected ") + what, peek().pos);
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (true) {
      if (accept(Tok::Plus)) {
        terms.push_back(term());
      } else if (accept(Tok::Minus)) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return add(std::move(terms));
  }

  Expr term() {
    Expr acc = factor();
    while (true) {
      if (accept(Tok::Star)) {
        acc = acc * factor();
      } else if (peek().kind == Tok::Slash) {
        std::size_t pos = next().pos;
        Expr d = factor();
        if (d.is_zero()) throw ParseError("division by zero", pos);
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Expr factor() {
    bool negate = accept(Tok::Minus);
    Expr a = atom();
    if (accept(Tok::Caret)) a = pow_checked(a, exponent());
    return negate ? -a : a;
  }

  Expr pow_checked(const Expr& a, const Rational& q) {
    if (a.is_zero() && q < 0) throw ParseError("zero raised to a negative power", peek().pos);
    return pow(a, q);
  }

  Rational exponent() {
    if (peek().kind == Tok::Number) return number(next());
    if (!accept(Tok::LParen)) throw ParseError("expected exponent", peek().pos);
    bool negative = accept(Tok::Minus);
    if (peek().kind != Tok::Number) throw ParseError("expected number in exponent", peek().pos);
    Rational q = number(next());
    if (peek().kind == Tok::Slash) {
      std::size_t pos = next().pos;
      if (peek().kind != Tok::Number) throw ParseError("expected denominator in exponent", peek().pos);
      Rational d = number(next());
      if (d == 0) throw ParseError("zero denominator in exponent", pos);
      q /= d;
    }
    expect(Tok::RParen, "')' after exponent");
    return negative ? Rational(-q) : q;
  }

  static Rational number(const Token& t) {
    try {
      return parse_rational(t.text);
    } catch (const DomainError&) {
      throw ParseError("malformed number '" + t.text + "'", t.pos);
    }
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        return Expr(number(next()));
      case Tok::LParen: {
        next();
        Expr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        next();
        static const std::vector<std::string> funcs{"ln", "exp", "sin", "cos", "sqrt"};
        if (std::find(funcs.begin(), funcs.end(), t.text) != funcs.end()) {
          expect(Tok::LParen, "'(' after function name");
          Expr u = expr();
          expect(Tok::RParen, "')'");
          if (t.text == "ln") return ln(u);
          if (t.text == "exp") return exp(u);
          if (t.text == "sin") return sin(u);
          if (t.text == "cos") return cos(u);
          return sqrt(u);
        }
        if (std::find(declared_.begin(), declared_.end(), t.text) == declared_.end()) {
          throw UndeclaredIdentifier(t.text, t.pos);
        }
        return sym(t.text);
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  const std::vector<std::string>& declared_;
  std::size_t i_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text, const std::vector<std::string>& declared) {
  try {
    return Parser(text, declared).parse();
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace projclass
