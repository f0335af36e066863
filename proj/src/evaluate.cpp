#include "projclass/evaluate.hpp"

namespace projclass {

const Rational* SamplePoint::find(const std::string& name) const {
  for (const auto& [k, v] : coords) {
    if (k == name) return &v;
  }
  return nullptr;
}

const Rational& SamplePoint::at(const std::string& name) const {
  const Rational* v = find(name);
  if (!v) throw EvaluationError(EvaluationError::Reason::Unbound, "unbound identifier '" + name + "'");
  return *v;
}

void SamplePoint::set(const std::string& name, const Rational& v) {
  for (auto& [k, x] : coords) {
    if (k == name) {
      x = v;
      return;
    }
  }
  coords.emplace_back(name, v);
}

std::string SamplePoint::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : coords) {
    if (!first) out += ", ";
    first = false;
    out += k + "=" + v.get_str();
  }
  return out + "}";
}

Tracked evaluate_tracked(const Expr& e, const SamplePoint& p) {
  Tracked r = evaluate_in<Tracked>(
      e, [&](const std::string& n) { return Tracked::constant(p.at(n)); },
      [](const Rational& q) { return Tracked::constant(q); });
  if (!r.value.is_finite()) throw EvaluationError(EvaluationError::Reason::Pole, "non-finite value");
  return r;
}

BigFloat evaluate_bigfloat(const Expr& e, const SamplePoint& p, mpfr_prec_t precision) {
  PrecisionScope scope(precision + 64);
  return evaluate_tracked(e, p).value.rounded(precision);
}

Jet taylor(const Expr& e, const SamplePoint& p, const std::array<std::string, 2>& vars, int order) {
  return evaluate_in<Jet>(
      e,
      [&](const std::string& n) {
        Tracked v = Tracked::constant(p.at(n));
        if (n == vars[0]) return Jet::variable(0, v, order);
        if (n == vars[1]) return Jet::variable(1, v, order);
        return Jet::constant(v, order);
      },
      [&](const Rational& q) { return Jet::constant(q, order); });
}

}  // namespace projclass
