#include "projclass/expr.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace projclass {

struct ExprNode {
  Expr::Kind kind = Expr::Kind::Num;
  FuncKind func = FuncKind::Ln;
  Rational num;
  std::string name;
  std::vector<Expr> args;
  std::size_t hash = 0;
  std::uint64_t mask = 0;
};

namespace {

constexpr std::size_t kExpandLimit = 4096;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(sgn(z) + 7);
  std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
  return h;
}

std::size_t hash_rational(const Rational& q) { return mix(hash_mpz(q.get_num()), hash_mpz(q.get_den())); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }
bool odd(const mpz_class& z) { return mpz_odd_p(z.get_mpz_t()) != 0; }

}  // namespace

struct ExprFactory {
  static Expr make(ExprNode&& n) {
    std::size_t h = mix(static_cast<std::size_t>(n.kind) + 1, static_cast<std::size_t>(n.func));
    std::uint64_t mask = 0;
    switch (n.kind) {
      case Expr::Kind::Num:
        h = mix(h, hash_rational(n.num));
        break;
      case Expr::Kind::Sym:
        h = mix(h, std::hash<std::string>{}(n.name));
        mask = symbol_bit(n.name);
        break;
      default:
        if (n.kind == Expr::Kind::Pow || n.kind == Expr::Kind::Mul) h = mix(h, hash_rational(n.num));
        for (const Expr& a : n.args) {
          h = mix(h, a.hash());
          mask |= a.symbol_mask();
        }
    }
    n.hash = h;
    n.mask = mask;
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
  }
  static Expr num(const Rational& q) {
    ExprNode n;
    n.kind = Expr::Kind::Num;
    n.num = q;
    return make(std::move(n));
  }
  static Expr sym(const std::string& s) {
    ExprNode n;
    n.kind = Expr::Kind::Sym;
    n.name = s;
    return make(std::move(n));
  }
  static Expr pow(const Expr& b, const Rational& q) {
    if (q == 1) return b;
    ExprNode n;
    n.kind = Expr::Kind::Pow;
    n.num = q;
    n.args = {b};
    return make(std::move(n));
  }
  static Expr mul(const Rational& c, std::vector<Expr> fs) {
    if (c == 0) return num(0);
    if (fs.empty()) return num(c);
    if (fs.size() == 1 && c == 1) return fs[0];
    ExprNode n;
    n.kind = Expr::Kind::Mul;
    n.num = c;
    n.args = std::move(fs);
    return make(std::move(n));
  }
  static Expr add(std::vector<Expr> ts) {
    if (ts.empty()) return num(0);
    if (ts.size() == 1) return ts[0];
    ExprNode n;
    n.kind = Expr::Kind::Add;
    n.args = std::move(ts);
    return make(std::move(n));
  }
  static Expr func(FuncKind f, const Expr& u) {
    ExprNode n;
    n.kind = Expr::Kind::Func;
    n.func = f;
    n.args = {u};
    return make(std::move(n));
  }
};

namespace {

const Expr& zero_expr() {
  static const Expr z = ExprFactory::num(0);
  return z;
}

const std::vector<Expr>& no_args() {
  static const std::vector<Expr> v;
  return v;
}

}  // namespace

Expr::Expr() : n_(zero_expr().n_) {}
Expr::Expr(int v) : Expr(Rational(v)) {}
Expr::Expr(const Rational& q) : n_(ExprFactory::num(q).n_) {}
Expr Expr::symbol(const std::string& name) { return ExprFactory::sym(name); }

Expr::Kind Expr::kind() const { return n_->kind; }
bool Expr::is_zero() const { return n_->kind == Kind::Num && n_->num == 0; }
bool Expr::is_one() const { return n_->kind == Kind::Num && n_->num == 1; }
const Rational& Expr::number() const { return n_->num; }
const std::string& Expr::name() const { return n_->name; }
FuncKind Expr::func() const { return n_->func; }
const std::vector<Expr>& Expr::args() const { return n_ ? n_->args : no_args(); }
std::size_t Expr::hash() const { return n_->hash; }
std::uint64_t Expr::symbol_mask() const { return n_->mask; }
bool Expr::may_depend_on(const std::string& name) const { return (n_->mask & symbol_bit(name)) != 0; }

std::uint64_t symbol_bit(const std::string& name) {
  return std::uint64_t{1} << (std::hash<std::string>{}(name) % 64);
}

namespace {

int sign_of(int c) { return (c > 0) - (c < 0); }

int compare_lists(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return sign_of(static_cast<int>(a.size()) - static_cast<int>(b.size()));
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return 0;
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Expr::Kind::Num:
      return sign_of(cmp(a.number(), b.number()));
    case Expr::Kind::Sym:
      return sign_of(a.name().compare(b.name()));
    case Expr::Kind::Func:
      if (a.func() != b.func()) return a.func() < b.func() ? -1 : 1;
      return compare(a.args()[0], b.args()[0]);
    case Expr::Kind::Pow: {
      int c = compare(a.base(), b.base());
      return c != 0 ? c : sign_of(cmp(a.number(), b.number()));
    }
    case Expr::Kind::Mul: {
      int c = compare_lists(a.args(), b.args());
      return c != 0 ? c : sign_of(cmp(a.number(), b.number()));
    }
    case Expr::Kind::Add:
      return compare_lists(a.args(), b.args());
  }
  return 0;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  switch (term.kind()) {
    case Expr::Kind::Num:
      return {term.number(), Expr(1)};
    case Expr::Kind::Mul:
      return {term.number(), ExprFactory::mul(1, term.args())};
    default:
      return {Rational(1), term};
  }
}

std::pair<Expr, Rational> split_power(const Expr& factor) {
  if (factor.kind() == Expr::Kind::Pow) return {factor.base(), factor.exponent()};
  return {factor, Rational(1)};
}

namespace {

std::vector<Expr> factor_list(const Expr& key) {
  if (key.kind() == Expr::Kind::Mul) return key.args();
  return {key};
}

/// Monomial order for sum terms: lexicographic on bases, higher exponent first.
int compare_monomials(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return 0;
  std::vector<Expr> fa = factor_list(a), fb = factor_list(b);
  std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto [ba, qa] = split_power(fa[i]);
    auto [bb, qb] = split_power(fb[i]);
    int c = compare(ba, bb);
    if (c != 0) return c;
    int e = cmp(qa, qb);
    if (e != 0) return e > 0 ? -1 : 1;
  }
  return sign_of(static_cast<int>(fa.size()) - static_cast<int>(fb.size()));
}

struct MonomialLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare_monomials(a, b) < 0; }
};

Expr make_term(const Rational& c, const Expr& key) {
  if (c == 0) return Expr(0);
  if (key.is_one()) return Expr(c);
  if (c == 1) return key;
  if (key.kind() == Expr::Kind::Mul) return ExprFactory::mul(c, key.args());
  return ExprFactory::mul(c, {key});
}

/// Content g and primitive part P with A = g*P. The sign of g follows the
/// leading term unless `keep_sign` is set, in which case g > 0.
std::pair<Rational, Expr> primitive_part(const Expr& sum, bool keep_sign) {
  mpz_class g = 0, l = 1;
  for (const Expr& t : sum.args()) {
    Rational c = split_coefficient(t).first;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational content(g, l);
  content.canonicalize();
  if (!keep_sign && split_coefficient(sum.args()[0]).first < 0) content = -content;
  if (content == 1) return {content, sum};
  std::vector<Expr> terms;
  terms.reserve(sum.args().size());
  for (const Expr& t : sum.args()) {
    auto [c, key] = split_coefficient(t);
    terms.push_back(make_term(c / content, key));
  }
  return {content, ExprFactory::add(std::move(terms))};
}

bool leading_negative(const Expr& u) {
  switch (u.kind()) {
    case Expr::Kind::Num:
      return u.number() < 0;
    case Expr::Kind::Mul:
      return u.number() < 0;
    case Expr::Kind::Add:
      return split_coefficient(u.args()[0]).first < 0;
    default:
      return false;
  }
}

Rational rational_pow(const Rational& r, const mpz_class& n) {
  if (!n.fits_slong_p()) throw DomainError("exponent too large");
  long e = n.get_si();
  mpz_class num, den;
  unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), r.get_num_mpz_t(), ue);
  mpz_pow_ui(den.get_mpz_t(), r.get_den_mpz_t(), ue);
  Rational out = e < 0 ? Rational(den, num) : Rational(num, den);
  if (e < 0 && num == 0) throw DomainError("division by zero");
  out.canonicalize();
  return out;
}

/// Exact d-th root of a positive rational, if it exists.
std::optional<Rational> exact_root(const Rational& r, unsigned long d) {
  mpz_class a, b;
  if (mpz_root(a.get_mpz_t(), r.get_num_mpz_t(), d) == 0) return std::nullopt;
  if (mpz_root(b.get_mpz_t(), r.get_den_mpz_t(), d) == 0) return std::nullopt;
  return Rational(a, b);
}

}  // namespace

Expr sym(const std::string& name) { return ExprFactory::sym(name); }

Expr add(std::vector<Expr> terms) {
  Rational constant = 0;
  std::map<Expr, Rational, MonomialLess> collected;
  std::function<void(const Expr&)> take = [&](const Expr& t) {
    if (t.kind() == Expr::Kind::Add) {
      for (const Expr& s : t.args()) take(s);
      return;
    }
    if (t.kind() == Expr::Kind::Num) {
      constant += t.number();
      return;
    }
    auto [c, key] = split_coefficient(t);
    auto it = collected.find(key);
    if (it == collected.end()) {
      collected.emplace(key, c);
    } else {
      it->second += c;
    }
  };
  for (const Expr& t : terms) take(t);
  std::vector<Expr> out;
  out.reserve(collected.size() + 1);
  for (auto& [key, c] : collected) {
    if (c != 0) out.push_back(make_term(c, key));
  }
  if (constant != 0) out.push_back(Expr(constant));
  return ExprFactory::add(std::move(out));
}

Expr mul(std::vector<Expr> factors) {
  Rational coeff = 1;
  std::map<Expr, Rational, ExprLess> items;
  std::map<Rational, Rational> numeric;
  std::vector<Expr> exp_args;

  auto push_numeric = [&](const Rational& r, const Rational& q) {
    if (r == 1 || q == 0) return;
    auto it = numeric.find(r);
    if (it == numeric.end()) {
      numeric.emplace(r, q);
    } else {
      it->second += q;
    }
  };

  auto push_factor = [&](const Expr& f) {
    auto [b, q] = split_power(f);
    switch (b.kind()) {
      case Expr::Kind::Num:
        push_numeric(b.number(), q);
        return;
      case Expr::Kind::Add: {
        bool keep_sign = !is_integer(q) && !odd(q.get_den());
        auto [g, p] = primitive_part(b, keep_sign);
        push_numeric(g, q);
        items[p] += q;
        return;
      }
      case Expr::Kind::Func:
        if (b.func() == FuncKind::Exp) {
          exp_args.push_back(q == 1 ? b.args()[0] : mul({b.args()[0], Expr(q)}));
          return;
        }
        break;
      default:
        break;
    }
    items[b] += q;
  };

  for (const Expr& f : factors) {
    switch (f.kind()) {
      case Expr::Kind::Num:
        coeff *= f.number();
        break;
      case Expr::Kind::Mul:
        coeff *= f.number();
        for (const Expr& g : f.args()) push_factor(g);
        break;
      default:
        push_factor(f);
    }
  }
  if (coeff == 0) return Expr(0);

  for (auto& [r, q] : numeric) {
    if (q == 0) continue;
    if (r == 0) {
      if (q < 0) throw DomainError("division by zero");
      return Expr(0);
    }
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational frac = q - Rational(n);
    coeff *= rational_pow(r, n);
    if (frac == 0) continue;
    Rational base = r;
    const mpz_class& d = frac.get_den();
    if (base < 0 && odd(d)) {
      if (odd(frac.get_num())) coeff = -coeff;
      base = -base;
    }
    if (base > 0 && d.fits_ulong_p()) {
      if (auto root = exact_root(base, d.get_ui())) {
        coeff *= rational_pow(*root, frac.get_num());
        continue;
      }
    }
    items[Expr(base)] += frac;
  }

  if (!exp_args.empty()) {
    Expr e = exp(add(exp_args));
    if (e.kind() == Expr::Kind::Func && e.func() == FuncKind::Exp) {
      items[e] += 1;
    } else {
      std::vector<Expr> rest;
      rest.push_back(Expr(coeff));
      for (auto& [b, q] : items) {
        if (q != 0) rest.push_back(ExprFactory::pow(b, q));
      }
      rest.push_back(e);
      return mul(std::move(rest));
    }
  }

  std::vector<Expr> plain;
  std::vector<std::pair<Expr, unsigned long>> sums;
  std::size_t estimate = 1;
  for (auto& [b, q] : items) {
    if (q == 0) continue;
    if (b.kind() == Expr::Kind::Add && is_integer(q) && q > 0 && q.get_num().fits_ulong_p()) {
      unsigned long n = q.get_num().get_ui();
      sums.emplace_back(b, n);
      for (unsigned long i = 0; i < n && estimate <= kExpandLimit; ++i) estimate *= b.args().size();
      continue;
    }
    plain.push_back(ExprFactory::pow(b, q));
  }
  if (sums.empty() || estimate > kExpandLimit) {
    for (auto& [b, n] : sums) plain.push_back(ExprFactory::pow(b, Rational(static_cast<long>(n))));
    std::sort(plain.begin(), plain.end(), [](const Expr& x, const Expr& y) {
      return compare(split_power(x).first, split_power(y).first) < 0;
    });
    return ExprFactory::mul(coeff, std::move(plain));
  }
  std::sort(plain.begin(), plain.end(), [](const Expr& x, const Expr& y) {
    return compare(split_power(x).first, split_power(y).first) < 0;
  });
  std::vector<Expr> terms{ExprFactory::mul(coeff, std::move(plain))};
  for (auto& [b, n] : sums) {
    for (unsigned long i = 0; i < n; ++i) {
      std::vector<Expr> next;
      next.reserve(terms.size() * b.args().size());
      for (const Expr& t : terms) {
        for (const Expr& s : b.args()) next.push_back(mul({t, s}));
      }
      Expr combined = add(std::move(next));
      terms = combined.kind() == Expr::Kind::Add ? combined.args() : std::vector<Expr>{combined};
    }
  }
  return add(std::move(terms));
}

namespace {

// Power of a normalized factor, left unexpanded so that mul can merge equal
// bases before expanding sums.
Expr unexpanded_pow(const Expr& f, const Rational& q) {
  auto [b, a] = split_power(f);
  bool combine = is_integer(q) || odd(a.get_num()) || (odd(a.get_den()) && odd(q.get_den()));
  if (combine && (b.kind() == Expr::Kind::Add || b.kind() == Expr::Kind::Sym)) return ExprFactory::pow(b, a * q);
  return pow(f, q);
}

}  // namespace

Expr pow(const Expr& base, const Rational& q) {
  if (q == 0) return Expr(1);
  if (q == 1) return base;
  switch (base.kind()) {
    case Expr::Kind::Num:
      if (base.number() == 0 && q < 0) throw DomainError("division by zero");
      return mul({ExprFactory::pow(base, q)});
    case Expr::Kind::Sym:
      return ExprFactory::pow(base, q);
    case Expr::Kind::Func:
      if (base.func() == FuncKind::Exp) return exp(mul({base.args()[0], Expr(q)}));
      return ExprFactory::pow(base, q);
    case Expr::Kind::Pow: {
      const Rational& a = base.exponent();
      bool combine = is_integer(q) || odd(a.get_num()) || (odd(a.get_den()) && odd(q.get_den()));
      if (combine) return pow(base.base(), a * q);
      return ExprFactory::pow(base, q);
    }
    case Expr::Kind::Mul: {
      const Rational& c = base.number();
      if (is_integer(q) || odd(q.get_den())) {
        std::vector<Expr> parts{pow(Expr(c), q)};
        for (const Expr& f : base.args()) parts.push_back(unexpanded_pow(f, q));
        return mul(std::move(parts));
      }
      Rational ac = abs(c);
      Expr rest = ExprFactory::mul(c < 0 ? Rational(-1) : Rational(1), base.args());
      Expr powered = rest.kind() == Expr::Kind::Mul ? ExprFactory::pow(rest, q) : pow(rest, q);
      return mul({pow(Expr(ac), q), powered});
    }
    case Expr::Kind::Add:
      return mul({ExprFactory::pow(base, q)});
  }
  return ExprFactory::pow(base, q);
}

Expr ln(const Expr& u) {
  if (u.is_one()) return Expr(0);
  if (u.kind() == Expr::Kind::Func && u.func() == FuncKind::Exp) return u.args()[0];
  return ExprFactory::func(FuncKind::Ln, u);
}

Expr exp(const Expr& u) {
  if (u.is_zero()) return Expr(1);
  if (u.kind() == Expr::Kind::Func && u.func() == FuncKind::Ln) return u.args()[0];
  std::vector<Expr> terms = u.kind() == Expr::Kind::Add ? u.args() : std::vector<Expr>{u};
  std::vector<Expr> powers, rest;
  for (const Expr& t : terms) {
    auto [c, key] = split_coefficient(t);
    if (key.kind() == Expr::Kind::Func && key.func() == FuncKind::Ln) {
      powers.push_back(pow(key.args()[0], c));
    } else {
      rest.push_back(t);
    }
  }
  if (powers.empty()) return ExprFactory::func(FuncKind::Exp, u);
  powers.push_back(exp(add(std::move(rest))));
  return mul(std::move(powers));
}

Expr sin(const Expr& u) {
  if (u.is_zero()) return Expr(0);
  if (leading_negative(u)) return -sin(-u);
  return ExprFactory::func(FuncKind::Sin, u);
}

Expr cos(const Expr& u) {
  if (u.is_zero()) return Expr(1);
  if (leading_negative(u)) return cos(-u);
  return ExprFactory::func(FuncKind::Cos, u);
}

Expr sqrt(const Expr& u) { return pow(u, Rational(1, 2)); }

Expr func(FuncKind f, const Expr& u) {
  switch (f) {
    case FuncKind::Ln:
      return ln(u);
    case FuncKind::Exp:
      return exp(u);
    case FuncKind::Sin:
      return sin(u);
    case FuncKind::Cos:
      return cos(u);
  }
  return ln(u);
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return add({a, b});
}
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr(0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return mul({a, b});
}
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (b.kind() == Expr::Kind::Mul) {
    std::vector<Expr> parts{a, Expr(Rational(1) / b.number())};
    for (const Expr& f : b.args()) parts.push_back(unexpanded_pow(f, -1));
    return mul(std::move(parts));
  }
  if (b.kind() == Expr::Kind::Pow) return mul({a, unexpanded_pow(b, -1)});
  return a * pow(b, -1);
}
Expr operator-(const Expr& a) {
  if (a.kind() == Expr::Kind::Num) return Expr(Rational(-a.number()));
  return mul({Expr(-1), a});
}
Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr differentiate(const Expr& e, const std::string& var) {
  std::unordered_map<const ExprNode*, Expr> memo;
  std::uint64_t bit = symbol_bit(var);
  std::function<Expr(const Expr&)> d = [&](const Expr& x) -> Expr {
    if ((x.symbol_mask() & bit) == 0) return Expr(0);
    auto it = memo.find(x.node());
    if (it != memo.end()) return it->second;
    Expr r;
    switch (x.kind()) {
      case Expr::Kind::Num:
        r = Expr(0);
        break;
      case Expr::Kind::Sym:
        r = Expr(x.name() == var ? 1 : 0);
        break;
      case Expr::Kind::Add: {
        std::vector<Expr> ts;
        for (const Expr& t : x.args()) ts.push_back(d(t));
        r = add(std::move(ts));
        break;
      }
      case Expr::Kind::Mul: {
        const auto& fs = x.args();
        std::vector<Expr> ts;
        for (std::size_t i = 0; i < fs.size(); ++i) {
          Expr di = d(fs[i]);
          if (di.is_zero()) continue;
          std::vector<Expr> prod{Expr(x.number()), di};
          for (std::size_t j = 0; j < fs.size(); ++j) {
            if (j != i) prod.push_back(fs[j]);
          }
          ts.push_back(mul(std::move(prod)));
        }
        r = add(std::move(ts));
        break;
      }
      case Expr::Kind::Pow: {
        Expr db = d(x.base());
        r = db.is_zero() ? Expr(0) : mul({Expr(x.exponent()), pow(x.base(), x.exponent() - 1), db});
        break;
      }
      case Expr::Kind::Func: {
        const Expr& u = x.args()[0];
        Expr du = d(u);
        if (du.is_zero()) {
          r = Expr(0);
          break;
        }
        switch (x.func()) {
          case FuncKind::Ln:
            r = mul({pow(u, -1), du});
            break;
          case FuncKind::Exp:
            r = mul({x, du});
            break;
          case FuncKind::Sin:
            r = mul({cos(u), du});
            break;
          case FuncKind::Cos:
            r = mul({Expr(-1), sin(u), du});
            break;
        }
        break;
      }
    }
    memo.emplace(x.node(), r);
    return r;
  };
  return d(e);
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& values) {
  std::uint64_t mask = 0;
  for (const auto& [k, v] : values) mask |= symbol_bit(k);
  std::unordered_map<const ExprNode*, Expr> memo;
  std::function<Expr(const Expr&)> s = [&](const Expr& x) -> Expr {
    if ((x.symbol_mask() & mask) == 0) return x;
    auto it = memo.find(x.node());
    if (it != memo.end()) return it->second;
    Expr r;
    switch (x.kind()) {
      case Expr::Kind::Num:
        r = x;
        break;
      case Expr::Kind::Sym: {
        auto v = values.find(x.name());
        r = v == values.end() ? x : v->second;
        break;
      }
      case Expr::Kind::Add: {
        std::vector<Expr> ts;
        for (const Expr& t : x.args()) ts.push_back(s(t));
        r = add(std::move(ts));
        break;
      }
      case Expr::Kind::Mul: {
        std::vector<Expr> fs{Expr(x.number())};
        for (const Expr& f : x.args()) fs.push_back(s(f));
        r = mul(std::move(fs));
        break;
      }
      case Expr::Kind::Pow:
        r = pow(s(x.base()), x.exponent());
        break;
      case Expr::Kind::Func:
        r = func(x.func(), s(x.args()[0]));
        break;
    }
    memo.emplace(x.node(), r);
    return r;
  };
  return s(e);
}

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  std::unordered_map<const ExprNode*, bool> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& x) {
    if (!seen.emplace(x.node(), true).second) return;
    if (x.kind() == Expr::Kind::Sym) out.insert(x.name());
    for (const Expr& a : x.args()) walk(a);
  };
  walk(e);
  return out;
}

bool depends_on(const Expr& e, const std::string& var) {
  if (!e.may_depend_on(var)) return false;
  return free_symbols(e).count(var) > 0;
}

std::size_t node_count(const Expr& e) {
  std::unordered_map<const ExprNode*, bool> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& x) {
    if (!seen.emplace(x.node(), true).second) return;
    for (const Expr& a : x.args()) walk(a);
  };
  walk(e);
  return seen.size();
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Ln:
      return "ln";
    case FuncKind::Exp:
      return "exp";
    case FuncKind::Sin:
      return "sin";
    case FuncKind::Cos:
      return "cos";
  }
  return "?";
}

namespace {

std::string print_atom(const Expr& b) {
  switch (b.kind()) {
    case Expr::Kind::Sym:
    case Expr::Kind::Func:
      return to_string(b);
    case Expr::Kind::Num:
      if (b.number() >= 0 && is_integer(b.number())) return to_string(b.number());
      return "(" + to_string(b.number()) + ")";
    default:
      return "(" + to_string(b) + ")";
  }
}

std::string print_exponent(const Rational& q) {
  if (q >= 0 && is_integer(q)) return to_string(q);
  return "(" + to_string(q) + ")";
}

}  // namespace

std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Num:
      return to_string(e.number());
    case Expr::Kind::Sym:
      return e.name();
    case Expr::Kind::Func:
      return func_name(e.func()) + "(" + to_string(e.args()[0]) + ")";
    case Expr::Kind::Pow:
      return print_atom(e.base()) + "^" + print_exponent(e.exponent());
    case Expr::Kind::Mul: {
      std::string out;
      const Rational& c = e.number();
      if (c == -1) {
        out = "-";
      } else if (c != 1) {
        out = to_string(c) + "*";
      }
      bool first = true;
      for (const Expr& f : e.args()) {
        if (!first) out += "*";
        first = false;
        out += f.kind() == Expr::Kind::Add ? "(" + to_string(f) + ")" : to_string(f);
      }
      return out;
    }
    case Expr::Kind::Add: {
      std::string out;
      bool first = true;
      for (const Expr& t : e.args()) {
        bool negative = split_coefficient(t).first < 0;
        if (first) {
          out = to_string(t);
        } else if (negative) {
          out += " - " + to_string(-t);
        } else {
          out += " + " + to_string(t);
        }
        first = false;
      }
      return out;
    }
  }
  return "";
}

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw DomainError("empty rational literal");
  bool negative = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  std::string body = s.substr(i);
  auto digits_only = [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  Rational out;
  auto slash = body.find('/');
  auto dot = body.find('.');
  if (slash != std::string::npos) {
    std::string p = body.substr(0, slash), q = body.substr(slash + 1);
    if (!digits_only(p) || !digits_only(q)) throw DomainError("malformed rational '" + text + "'");
    mpz_class den(q);
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    out = Rational(mpz_class(p), den);
  } else if (dot != std::string::npos) {
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!digits_only(ip) || (!fp.empty() && !digits_only(fp))) throw DomainError("malformed decimal '" + text + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    out = Rational(mpz_class(ip + fp), scale);
  } else {
    if (!digits_only(body)) throw DomainError("malformed integer '" + text + "'");
    out = Rational(mpz_class(body));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

namespace {

using Monomial = std::vector<int>;
using Poly = std::map<Monomial, Rational>;

struct BudgetExceeded {};

struct PolyArith {
  std::size_t nvars;
  std::size_t budget;

  void check(const Poly& p) const {
    if (p.size() > budget) throw BudgetExceeded{};
  }
  Poly constant(const Rational& c) const {
    Poly p;
    if (c != 0) p[Monomial(nvars, 0)] = c;
    return p;
  }
  Poly add(const Poly& a, const Poly& b) const {
    Poly r = a;
    for (const auto& [m, c] : b) {
      auto& slot = r[m];
      slot += c;
      if (slot == 0) r.erase(m);
    }
    check(r);
    return r;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    if (a.size() * b.size() > budget * 4) throw BudgetExceeded{};
    Poly r;
    for (const auto& [ma, ca] : a) {
      for (const auto& [mb, cb] : b) {
        Monomial m(nvars);
        for (std::size_t i = 0; i < nvars; ++i) m[i] = ma[i] + mb[i];
        auto& slot = r[m];
        slot += ca * cb;
      }
    }
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    check(r);
    return r;
  }
  Poly power(const Poly& a, unsigned long n) const {
    Poly r = constant(1);
    for (unsigned long i = 0; i < n; ++i) r = mul(r, a);
    return r;
  }
};

struct Fraction {
  Poly num;
  Poly den;
};

}  // namespace

std::optional<bool> exact_rational_zero(const Expr& e, std::size_t term_budget) {
  if (e.is_zero()) return true;
  std::set<std::string> syms = free_symbols(e);
  std::map<std::string, std::size_t> index;
  for (const auto& s : syms) index.emplace(s, index.size());
  PolyArith P{syms.size(), term_budget};
  std::unordered_map<const ExprNode*, Fraction> memo;
  struct NotRational {};
  std::function<Fraction(const Expr&)> conv = [&](const Expr& x) -> Fraction {
    auto it = memo.find(x.node());
    if (it != memo.end()) return it->second;
    Fraction r;
    switch (x.kind()) {
      case Expr::Kind::Num:
        r = {P.constant(x.number()), P.constant(1)};
        break;
      case Expr::Kind::Sym: {
        Monomial m(P.nvars, 0);
        m[index.at(x.name())] = 1;
        r = {Poly{{m, Rational(1)}}, P.constant(1)};
        break;
      }
      case Expr::Kind::Func:
        throw NotRational{};
      case Expr::Kind::Pow: {
        const Rational& q = x.exponent();
        if (!is_integer(q) || !q.get_num().fits_slong_p()) throw NotRational{};
        long n = q.get_num().get_si();
        if (n > 64 || n < -64) throw NotRational{};
        Fraction b = conv(x.base());
        unsigned long un = static_cast<unsigned long>(n < 0 ? -n : n);
        r = n >= 0 ? Fraction{P.power(b.num, un), P.power(b.den, un)} : Fraction{P.power(b.den, un), P.power(b.num, un)};
        if (r.den.empty()) throw NotRational{};
        break;
      }
      case Expr::Kind::Mul: {
        r = {P.constant(x.number()), P.constant(1)};
        for (const Expr& f : x.args()) {
          Fraction g = conv(f);
          r = {P.mul(r.num, g.num), P.mul(r.den, g.den)};
        }
        break;
      }
      case Expr::Kind::Add: {
        r = {P.constant(0), P.constant(1)};
        for (const Expr& t : x.args()) {
          Fraction g = conv(t);
          if (g.den == r.den) {
            r.num = P.add(r.num, g.num);
          } else {
            r = {P.add(P.mul(r.num, g.den), P.mul(g.num, r.den)), P.mul(r.den, g.den)};
          }
        }
        break;
      }
    }
    memo.emplace(x.node(), r);
    return r;
  };
  try {
    Fraction f = conv(e);
    return f.num.empty();
  } catch (const NotRational&) {
    return std::nullopt;
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

}  // namespace projclass
