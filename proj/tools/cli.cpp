#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "projclass/bigfloat.hpp"
#include "projclass/errors.hpp"
#include "projclass/frobenius.hpp"
#include "projclass/metrisability.hpp"

namespace projclass::cli {

InvalidRequest::InvalidRequest(std::vector<Issue> issues)
    : std::runtime_error(issues.empty() ? "invalid request" : issues.front().path + ": " + issues.front().message),
      issues_(std::move(issues)) {}

namespace {

using Clock = std::chrono::steady_clock;

const std::map<std::string, std::string> kSubcommandKinds = {
    {"analyze-ode", "ode"},           {"analyze-connection", "connection"}, {"analyze-hydro", "hydro"},
    {"frobenius", "frobenius"},       {"verify-sigma", "verify-sigma"},     {"verify-integral", "verify-integral"},
};

const std::map<std::string, std::vector<std::string>> kQuestions = {
    {"ode", {"killing", "liouville", "degenerate", "nu5"}},
    {"connection", {"killing", "obstructions", "reconstruct", "liouville", "nu5"}},
    {"hydro", {"count", "obstructions", "reconstruct", "metric-h"}},
    {"frobenius", {"wdvv", "flow", "trimetric", "witness", "pencil"}},
};

const std::map<std::string, std::vector<std::string>> kDefaultQuestions = {
    {"ode", {"killing", "liouville"}},
    {"connection", {"killing"}},
    {"hydro", {"count"}},
    {"frobenius", {"wdvv", "flow", "witness"}},
};

const std::set<std::string> kCommonFields = {"schema", "kind", "label", "context", "policy", "question"};

const std::map<std::string, std::set<std::string>> kKindFields = {
    {"ode", {"A0", "A1", "A2", "A3", "painleve"}},
    {"connection", {"gamma", "volume", "zoll", "at"}},
    {"hydro", {"lambda1", "lambda2", "A", "B", "elastic", "at"}},
    {"frobenius", {"prepotential", "trimetric", "pencil"}},
    {"verify-sigma", {"A0", "A1", "A2", "A3", "painleve", "sigma", "metric"}},
    {"verify-integral", {"A0", "A1", "A2", "A3", "painleve", "integral", "p"}},
};

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

/// Typed access to the request with JSON-pointer issue reporting.
class Reader {
 public:
  explicit Reader(const json& root) : root_(root) {}

  void issue(const std::string& path, const std::string& message) { issues_.push_back({path.empty() ? "/" : path, message}); }
  void check() const {
    if (!issues_.empty()) throw InvalidRequest(issues_);
  }
  bool ok() const { return issues_.empty(); }

  const json* find(const json& obj, const std::string& key) const {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  const json* object(const json& obj, const std::string& key, const std::string& path) {
    const json* v = find(obj, key);
    if (v && !v->is_object()) {
      issue(child(path, key), "expected object");
      return nullptr;
    }
    return v;
  }

  void only(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!allowed.count(it.key())) issue(child(path, it.key()), "unknown field");
    }
  }

  std::optional<std::string> string(const json& obj, const std::string& key, const std::string& path) {
    const json* v = find(obj, key);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      issue(child(path, key), "expected string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<long long> integer(const json& obj, const std::string& key, const std::string& path, long long lo,
                                   long long hi) {
    const json* v = find(obj, key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) {
      issue(child(path, key), "expected integer");
      return std::nullopt;
    }
    long long n = v->get<long long>();
    if (n < lo || n > hi) {
      issue(child(path, key), "expected integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return n;
  }

  std::vector<std::string> strings(const json& obj, const std::string& key, const std::string& path) {
    std::vector<std::string> out;
    const json* v = find(obj, key);
    if (!v) return out;
    if (!v->is_array()) {
      issue(child(path, key), "expected array of strings");
      return out;
    }
    for (std::size_t i = 0; i < v->size(); ++i) {
      if ((*v)[i].is_string()) {
        out.push_back((*v)[i].get<std::string>());
      } else {
        issue(child(child(path, key), i), "expected string");
      }
    }
    return out;
  }

  /// Expression text: a string in the expression grammar or an integer.
  std::optional<std::string> expr_text(const json& v, const std::string& path) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    issue(path, "expected expression string");
    return std::nullopt;
  }

  Expr expr(const Context& ctx, const json& v, const std::string& path) {
    auto text = expr_text(v, path);
    if (!text) return Expr(0);
    try {
      return ctx.parse(*text);
    } catch (const ParseError& e) {
      issue(path, e.what());
    }
    return Expr(0);
  }

  std::optional<Expr> expr(const Context& ctx, const json& obj, const std::string& key, const std::string& path) {
    const json* v = find(obj, key);
    if (!v) return std::nullopt;
    return expr(ctx, *v, child(path, key));
  }

  Expr required_expr(const Context& ctx, const json& obj, const std::string& key, const std::string& path) {
    const json* v = find(obj, key);
    if (!v) {
      issue(child(path, key), "missing required field");
      return Expr(0);
    }
    return expr(ctx, *v, child(path, key));
  }

  std::optional<Rational> rational(const json& v, const std::string& path) {
    auto text = expr_text(v, path);
    if (!text) return std::nullopt;
    try {
      return parse_rational(*text);
    } catch (const std::exception&) {
      issue(path, "expected rational number");
    }
    return std::nullopt;
  }

  std::optional<std::pair<Rational, Rational>> interval(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) {
      issue(path, "expected [lo, hi]");
      return std::nullopt;
    }
    auto lo = rational(v[0], child(path, 0));
    auto hi = rational(v[1], child(path, 1));
    if (!lo || !hi) return std::nullopt;
    if (!(*lo < *hi)) {
      issue(path, "expected lo < hi");
      return std::nullopt;
    }
    return std::pair{*lo, *hi};
  }

  const json& root() const { return root_; }

 private:
  const json& root_;
  std::vector<Issue> issues_;
};

struct Request {
  std::string kind;
  Context ctx;
  ZeroTestPolicy policy;
  std::vector<std::string> questions;
};

Context read_context(Reader& r, std::vector<std::string> default_vars) {
  const json* c = r.object(r.root(), "context", "");
  std::vector<std::string> vars = default_vars, params;
  std::vector<std::string> loci;
  if (c) {
    r.only(*c, {"variables", "parameters", "loci"}, "/context");
    if (c->contains("variables")) {
      vars = r.strings(*c, "variables", "/context");
      if (vars.size() != 2) r.issue("/context/variables", "expected exactly two coordinate variables");
    }
    params = r.strings(*c, "parameters", "/context");
    loci = r.strings(*c, "loci", "/context");
  }
  std::set<std::string> seen;
  for (const auto& n : vars) {
    if (!seen.insert(n).second) r.issue("/context", "identifier '" + n + "' declared twice");
  }
  for (const auto& n : params) {
    if (!seen.insert(n).second) r.issue("/context", "identifier '" + n + "' declared twice");
  }
  Context ctx(vars, params);
  for (std::size_t i = 0; i < loci.size(); ++i) {
    ctx.add_locus(r.expr(ctx, json(loci[i]), child("/context/loci", i)));
  }
  return ctx;
}

ZeroTestPolicy read_policy(Reader& r, const Options& o) {
  ZeroTestPolicy pol;
  if (const json* p = r.object(r.root(), "policy", "")) {
    r.only(*p, {"seed", "samples", "precision", "box", "boxes", "fixed", "threads"}, "/policy");
    if (auto v = r.integer(*p, "seed", "/policy", 0, std::numeric_limits<long long>::max())) {
      pol.rng_seed = static_cast<std::uint64_t>(*v);
    }
    if (auto v = r.integer(*p, "samples", "/policy", 1, 4096)) pol.sample_count = static_cast<int>(*v);
    if (auto v = r.integer(*p, "precision", "/policy", 64, 1 << 16)) pol.precision_bits = static_cast<int>(*v);
    if (auto v = r.integer(*p, "threads", "/policy", 1, 64)) pol.threads = static_cast<int>(*v);
    if (const json* b = r.find(*p, "box")) {
      if (auto iv = r.interval(*b, "/policy/box")) std::tie(pol.box_lo, pol.box_hi) = *iv;
    }
    if (const json* b = r.object(*p, "boxes", "/policy")) {
      for (auto it = b->begin(); it != b->end(); ++it) {
        if (auto iv = r.interval(*it, child("/policy/boxes", it.key()))) pol.boxes[it.key()] = *iv;
      }
    }
    if (const json* f = r.object(*p, "fixed", "/policy")) {
      for (auto it = f->begin(); it != f->end(); ++it) {
        if (auto q = r.rational(*it, child("/policy/fixed", it.key()))) pol.fixed[it.key()] = *q;
      }
    }
  }
  if (o.seed) pol.rng_seed = *o.seed;
  if (o.samples) pol.sample_count = *o.samples;
  if (o.precision) pol.precision_bits = *o.precision;
  if (o.threads) pol.threads = *o.threads;
  if (o.box) std::tie(pol.box_lo, pol.box_hi) = *o.box;
  return pol;
}

std::vector<std::string> read_questions(Reader& r, const std::string& kind) {
  auto allowed = kQuestions.find(kind);
  const json* q = r.find(r.root(), "question");
  if (allowed == kQuestions.end()) {
    if (q) r.issue("/question", "kind '" + kind + "' takes no question");
    return {};
  }
  if (!q) return kDefaultQuestions.at(kind);
  std::vector<std::string> out;
  auto add = [&](const json& v, const std::string& path) {
    if (!v.is_string()) {
      r.issue(path, "expected string");
      return;
    }
    std::string s = v.get<std::string>();
    if (std::find(allowed->second.begin(), allowed->second.end(), s) == allowed->second.end()) {
      r.issue(path, "unknown question '" + s + "'");
    } else if (std::find(out.begin(), out.end(), s) == out.end()) {
      out.push_back(s);
    }
  };
  if (q->is_array()) {
    for (std::size_t i = 0; i < q->size(); ++i) add((*q)[i], child("/question", i));
  } else {
    add(*q, "/question");
  }
  return out;
}

ProjectiveODE read_ode(Reader& r, const Context& ctx) {
  const json& root = r.root();
  ProjectiveODE ode{ctx, {Expr(0), Expr(0), Expr(0), Expr(0)}};
  bool coefficients = false;
  for (int i = 0; i < 4; ++i) {
    std::string key = "A" + std::to_string(i);
    if (auto e = r.expr(ctx, root, key, "")) {
      ode.A[static_cast<std::size_t>(i)] = *e;
      coefficients = true;
    }
  }
  if (const json* p = r.object(root, "painleve", "")) {
    if (coefficients) r.issue("/painleve", "conflicts with explicit coefficients A0..A3");
    r.only(*p, {"which", "params"}, "/painleve");
    auto which = r.integer(*p, "which", "/painleve", 1, 6);
    if (!which) {
      if (!p->contains("which")) r.issue("/painleve/which", "missing required field");
      return ode;
    }
    std::array<Expr, 4> params{Expr(0), Expr(0), Expr(0), Expr(0)};
    if (const json* ps = r.find(*p, "params")) {
      if (!ps->is_array() || ps->size() != 4) {
        r.issue("/painleve/params", "expected array of four expressions");
      } else {
        for (std::size_t i = 0; i < 4; ++i) params[i] = r.expr(ctx, (*ps)[i], child("/painleve/params", i));
      }
    }
    if (r.ok()) ode = painleve_structure(ctx, static_cast<int>(*which), params);
  }
  return ode;
}

// ---- report helpers ----

json point_json(const SamplePoint& p) {
  json w = json::object();
  for (const auto& [n, q] : p.coords) w[n] = to_string(q);
  return w;
}

json verdict_json(const ZeroResult& z) {
  json j;
  j["verdict"] = to_string(z.verdict);
  if (z.witness) j["witness"] = point_json(*z.witness);
  if (z.mixed) j["mixed"] = true;
  return j;
}

/// Zero when every entry is Zero, otherwise the first NonZero entry, otherwise
/// Indeterminate.
ZeroResult combined(const std::vector<ZeroResult>& rs) {
  ZeroResult out;
  out.verdict = Verdict::Zero;
  for (const ZeroResult& z : rs) {
    if (z.is_nonzero()) return z;
    if (!z.is_zero()) out = z;
  }
  return out;
}

ZeroResult combined_zero(const std::vector<Expr>& es, const Context& ctx, const ZeroTestPolicy& pol) {
  return combined(are_identically_zero(es, ctx, pol));
}

json evidence_json(const KillingEvidence& ev) {
  const std::map<std::string, const ZeroResult*> named = {
      {"beta", &ev.beta}, {"L1", &ev.l1},    {"L2", &ev.l2},    {"I_N", &ev.i_n},  {"W111", &ev.w111},
      {"W222", &ev.w222}, {"T11", &ev.t[0]}, {"T12", &ev.t[1]}, {"T21", &ev.t[2]}, {"T22", &ev.t[3]},
  };
  json out = json::object();
  json fired = json::array();
  for (const std::string& f : ev.fired) {
    fired.push_back(f);
    std::string name = f.substr(0, f.find('='));
    auto it = named.find(name);
    if (it != named.end()) out[name] = verdict_json(*it->second);
  }
  out["fired"] = fired;
  return out;
}

std::string error_name(const std::exception& e) {
  if (dynamic_cast<const CoincidentSpeeds*>(&e)) return "CoincidentSpeeds";
  if (dynamic_cast<const DegenerateCharacteristic*>(&e)) return "DegenerateCharacteristic";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const NonSpecialConnection*>(&e)) return "NonSpecialConnection";
  if (dynamic_cast<const EvaluationError*>(&e)) return "EvaluationError";
  if (dynamic_cast<const Unavailable*>(&e)) return "Unavailable";
  return "Error";
}

struct Session {
  json report;
  bool unclassified = false;
  bool timing = false;
  json timings = json::object();

  /// Runs one question; unclassified strata and domain rejections are
  /// recorded instead of propagated.
  void ask(const std::string& question, const std::function<void()>& f) {
    auto t0 = Clock::now();
    try {
      f();
    } catch (const UnclassifiedStratum& e) {
      report["unclassified"][question] = e.what();
      unclassified = true;
    } catch (const InvalidRequest&) {
      throw;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      report["rejected"][question] = {{"error", error_name(e)}, {"message", e.what()}};
    }
    if (timing) timings[question] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }

  /// Records a verdict that must be decisive for the request to classify.
  json decisive(const ZeroResult& z) {
    if (z.verdict == Verdict::Indeterminate || z.mixed) unclassified = true;
    return verdict_json(z);
  }
};

json liouville_json(Session& s, const ProjectiveODE& ode, const ZeroTestPolicy& pol) {
  auto L = liouville_invariants(ode);
  json out;
  const char* names[2] = {"L1", "L2"};
  auto v = are_identically_zero({L[0], L[1]}, ode.ctx, pol);
  for (std::size_t i = 0; i < 2; ++i) {
    json j = s.decisive(v[i]);
    if (L[i].is_number()) j["value"] = to_string(L[i].number());
    out[names[i]] = j;
  }
  return out;
}

void killing_question(Session& s, const Connection2D& c, const ZeroTestPolicy& pol) {
  KillingCount k = count_killing_forms(c, pol);
  s.report["count"] = k.count;
  s.report["evidence"] = evidence_json(k.evidence);
}

std::string decimal(const BigFloat& v) { return v.to_string(32); }

json obstructions_json(Session& s, const Connection2D& c, const ZeroTestPolicy& pol,
                       const std::optional<SamplePoint>& at) {
  ObstructionSet o = obstruction_set(c, pol, true);
  auto v = are_identically_zero({o.beta, o.i_n, (*o.i_s)[0], (*o.i_s)[1], o.t[0], o.t[1], o.t[2], o.t[3]}, c.ctx, pol);
  const char* names[] = {"beta", "I_N", "W111", "W222", "T11", "T12", "T21", "T22"};
  json out;
  for (std::size_t i = 0; i < v.size(); ++i) out[names[i]] = s.decisive(v[i]);
  out["det_M_minus_I_N"] = s.decisive(o.det_m_identity);
  out["det_T_minus_beta_I_N"] = s.decisive(o.det_t_identity);
  if (at) {
    PrecisionScope scope(static_cast<mpfr_prec_t>(pol.precision_bits));
    auto g = c.geometry_at(*at, 3);
    json vals;
    vals["point"] = point_json(*at);
    vals["beta"] = decimal(g.beta().value().value);
    vals["I_N"] = decimal(g.i_n().value().value);
    const auto& T = g.t();
    const char* tn[] = {"T11", "T12", "T21", "T22"};
    for (std::size_t i = 0; i < 4; ++i) vals[tn[i]] = decimal(T[i].value().value);
    out["at"] = vals;
  }
  return out;
}

json reconstruct_json(const Connection2D& c, const ZeroTestPolicy& pol, Reconstruction& rec) {
  rec = reconstruct_candidate(c, pol);
  json out;
  out["status"] = rec.status;
  out["closure"] = verdict_json(rec.closure);
  if (rec.section) {
    out["killing_form"] = {to_string(rec.section->k1), to_string(rec.section->k2)};
  }
  return out;
}

std::optional<SamplePoint> read_point(Reader& r, const Context& ctx) {
  const json* at = r.object(r.root(), "at", "");
  if (!at) return std::nullopt;
  SamplePoint p;
  for (const std::string& v : ctx.variables) {
    const json* x = r.find(*at, v);
    if (!x) {
      r.issue(child("/at", v), "missing coordinate");
      continue;
    }
    if (auto q = r.rational(*x, child("/at", v))) p.set(v, *q);
  }
  for (auto it = at->begin(); it != at->end(); ++it) {
    if (ctx.is_variable(it.key())) continue;
    if (ctx.is_parameter(it.key())) {
      if (auto q = r.rational(*it, child("/at", it.key()))) p.set(it.key(), *q);
    } else {
      r.issue(child("/at", it.key()), "undeclared identifier");
    }
  }
  return p;
}

// ---- pipelines ----

void run_ode(Reader& r, Request& req, Session& s) {
  ProjectiveODE ode = read_ode(r, req.ctx);
  r.check();
  const ZeroTestPolicy& pol = req.policy;
  for (const std::string& q : req.questions) {
    s.ask(q, [&] {
      if (q == "killing") {
        killing_question(s, thomas_connection(ode), pol);
      } else if (q == "liouville") {
        s.report["liouville"] = liouville_json(s, ode, pol);
      } else if (q == "degenerate") {
        DegenerateBranch d = degenerate_branch(ode, pol);
        json out;
        out["status"] = d.status;
        if (d.psi1) {
          out["psi1"] = to_string(*d.psi1);
          auto res = metrisability_residual(ode, SigmaCandidate{*d.psi1, Expr(0), Expr(0)});
          out["residual"] = s.decisive(combined_zero({res[0], res[1], res[2], res[3]}, ode.ctx, pol));
        }
        s.report["degenerate"] = out;
      } else if (q == "nu5") {
        s.report["nu5"] = s.decisive(is_identically_zero(nu5(thomas_connection(ode), pol), ode.ctx, pol));
      }
    });
  }
}

Connection2D read_connection(Reader& r, const Context& ctx) {
  const json& root = r.root();
  const json* gamma = r.object(root, "gamma", "");
  const json* zoll = r.object(root, "zoll", "");
  if (gamma && zoll) r.issue("/zoll", "conflicts with /gamma");
  if (zoll) {
    r.only(*zoll, {"F", "H"}, "/zoll");
    Expr F = r.required_expr(ctx, *zoll, "F", "/zoll");
    Expr H = r.required_expr(ctx, *zoll, "H", "/zoll");
    if (root.contains("volume")) r.issue("/volume", "not supported with /zoll");
    r.check();
    return zoll_connection(ctx, F, H);
  }
  Connection2D c(ctx);
  if (gamma) {
    std::set<std::string> assigned;
    for (auto it = gamma->begin(); it != gamma->end(); ++it) {
      const std::string& k = it.key();
      std::string path = child("/gamma", k);
      bool shape = k.size() == 3 && std::all_of(k.begin(), k.end(), [](char ch) { return ch == '1' || ch == '2'; });
      if (!shape) {
        r.issue(path, "expected key 'abc' with a, b, c in {1, 2} for Γ^a_bc");
        continue;
      }
      int a = k[0] - '1', b = k[1] - '1', d = k[2] - '1';
      std::string canonical{k[0], static_cast<char>('1' + std::min(b, d)), static_cast<char>('1' + std::max(b, d))};
      if (!assigned.insert(canonical).second) {
        r.issue(path, "duplicates the symmetric entry Γ^" + canonical.substr(0, 1) + "_" + canonical.substr(1));
        continue;
      }
      c.set(a, b, d, r.expr(ctx, *it, path));
    }
  }
  if (auto v = r.expr(ctx, root, "volume", "")) c.conn.volume = *v;
  return c;
}

void run_connection(Reader& r, Request& req, Session& s) {
  Connection2D c = read_connection(r, req.ctx);
  auto at = read_point(r, req.ctx);
  r.check();
  const ZeroTestPolicy& pol = req.policy;
  for (const std::string& q : req.questions) {
    s.ask(q, [&] {
      if (q == "killing") {
        killing_question(s, c, pol);
      } else if (q == "obstructions") {
        s.report["obstructions"] = obstructions_json(s, c, pol, at);
      } else if (q == "reconstruct") {
        Reconstruction rec;
        s.report["reconstruct"] = reconstruct_json(c, pol, rec);
      } else if (q == "liouville") {
        s.report["liouville"] = liouville_json(s, ode_from_connection(c), pol);
      } else if (q == "nu5") {
        s.report["nu5"] = s.decisive(is_identically_zero(nu5(c, pol), c.ctx, pol));
      }
    });
  }
}

HydroSystem2 read_hydro(Reader& r, const Context& ctx) {
  const json& root = r.root();
  bool velocities = root.contains("lambda1") || root.contains("lambda2");
  bool ab = root.contains("A") || root.contains("B");
  const json* elastic = r.object(root, "elastic", "");
  int forms = int(velocities) + int(ab) + int(elastic != nullptr);
  if (forms != 1) {
    r.issue("", "expected exactly one of lambda1/lambda2, A/B or elastic");
    r.check();
  }
  if (velocities) {
    Expr l1 = r.required_expr(ctx, root, "lambda1", "");
    Expr l2 = r.required_expr(ctx, root, "lambda2", "");
    r.check();
    return HydroSystem2::from_velocities(ctx, l1, l2);
  }
  if (ab) {
    Expr A = r.required_expr(ctx, root, "A", "");
    Expr B = r.required_expr(ctx, root, "B", "");
    r.check();
    return HydroSystem2::from_ab(ctx, A, B);
  }
  r.only(*elastic, {"G", "z"}, "/elastic");
  std::string z = r.string(*elastic, "z", "/elastic").value_or("z");
  if (ctx.declares(z)) r.issue("/elastic/z", "must not be a declared identifier");
  Context inner = ctx;
  inner.add_parameter(z);
  Expr G = r.required_expr(inner, *elastic, "G", "/elastic");
  r.check();
  return HydroSystem2::elastic_medium(ctx, G, z);
}

void run_hydro(Reader& r, Request& req, Session& s) {
  HydroSystem2 sys = read_hydro(r, req.ctx);
  auto at = read_point(r, req.ctx);
  r.check();
  const ZeroTestPolicy& pol = req.policy;
  s.report["A"] = to_string(sys.A);
  s.report["B"] = to_string(sys.B);
  for (const std::string& q : req.questions) {
    s.ask(q, [&] {
      if (q == "count") {
        KillingCount k = hamiltonian_count(sys, pol);
        s.report["count"] = k.count;
        s.report["evidence"] = evidence_json(k.evidence);
      } else if (q == "obstructions") {
        s.report["obstructions"] = obstructions_json(s, characteristic_connection(sys, pol), pol, at);
      } else if (q == "reconstruct") {
        Reconstruction rec;
        json out = reconstruct_json(characteristic_connection(sys, pol), pol, rec);
        if (rec.section) {
          HamiltonianMetric m = killing_to_metric({rec.section->k1, rec.section->k2}, sys, pol);
          out["metric"] = {{"k", to_string(m.k)}, {"f", to_string(m.f)}};
          auto h = hamiltonian_residuals(m, sys);
          out["hamiltonian_residual"] = s.decisive(combined_zero({h[0], h[1], h[2]}, sys.ctx, pol));
        }
        s.report["reconstruct"] = out;
      } else if (q == "metric-h") {
        MetricH h = projective_metric_h(sys, pol);
        s.report["metric_h"] = {{"E", to_string(h.h.E)},
                                {"F", to_string(h.h.F)},
                                {"G", to_string(h.h.G)},
                                {"upsilon", {to_string(h.upsilon[0]), to_string(h.upsilon[1])}}};
      }
    });
  }
}

Prepotential2D read_prepotential(Reader& r, const Context& ctx) {
  const json* p = r.object(r.root(), "prepotential", "");
  if (!p) {
    r.issue("/prepotential", "missing required field");
    r.check();
  }
  const std::string path = "/prepotential";
  if (p->contains("f")) {
    r.only(*p, {"f"}, path);
    Expr f = r.required_expr(ctx, *p, "f", path);
    r.check();
    return Prepotential2D::free(f);
  }
  r.only(*p, {"entry", "k", "K", "r", "c"}, path);
  auto entry = r.string(*p, "entry", path);
  if (!entry) {
    if (!p->contains("entry")) r.issue(child(path, "entry"), "missing required field (or give f)");
    r.check();
  }
  Expr K = r.expr(ctx, *p, "K", path).value_or(Expr(1));
  Expr rr = r.expr(ctx, *p, "r", path).value_or(Expr(1));
  Expr c = r.expr(ctx, *p, "c", path).value_or(Expr(1));
  Rational k(4);
  if (const json* kv = r.find(*p, "k")) {
    if (auto q = r.rational(*kv, child(path, "k"))) k = *q;
  }
  const std::set<std::string> uses_k = {"power"}, uses_r = {"exponential"}, uses_c = {"cubic"},
                              uses_K = {"power", "power-log", "log", "exponential", "cubic"};
  auto forbid = [&](const std::string& key, const std::set<std::string>& users) {
    if (p->contains(key) && !users.count(*entry)) r.issue(child(path, key), "not a parameter of entry '" + *entry + "'");
  };
  forbid("k", uses_k);
  forbid("r", uses_r);
  forbid("c", uses_c);
  forbid("K", uses_K);
  Prepotential2D F;
  if (*entry == "power") {
    F = Prepotential2D::power(k, K);
  } else if (*entry == "power-log") {
    F = Prepotential2D::power_log(K);
  } else if (*entry == "log") {
    F = Prepotential2D::log(K);
  } else if (*entry == "exponential") {
    F = Prepotential2D::exponential(rr, K);
  } else if (*entry == "trivial") {
    F = Prepotential2D::trivial();
  } else if (*entry == "cubic") {
    F = Prepotential2D::cubic(c, K);
  } else {
    r.issue(child(path, "entry"), "unknown catalog entry '" + *entry + "'");
  }
  r.check();
  return F;
}

void run_frobenius(Reader& r, Request& req, Session& s) {
  Prepotential2D F = read_prepotential(r, req.ctx);
  std::vector<std::array<Expr, 3>> trimetric = {
      {Expr(1), Expr(0), Expr(0)}, {Expr(0), Expr(1), Expr(0)}, {Expr(0), Expr(0), Expr(1)}};
  if (const json* t = r.find(r.root(), "trimetric")) {
    trimetric.clear();
    if (!t->is_array()) r.issue("/trimetric", "expected array of [C1, C2, C3]");
    for (std::size_t i = 0; t->is_array() && i < t->size(); ++i) {
      std::string path = child("/trimetric", i);
      const json& row = (*t)[i];
      if (!row.is_array() || row.size() != 3) {
        r.issue(path, "expected [C1, C2, C3]");
        continue;
      }
      trimetric.push_back({r.expr(req.ctx, row[0], child(path, 0)), r.expr(req.ctx, row[1], child(path, 1)),
                           r.expr(req.ctx, row[2], child(path, 2))});
    }
  }
  std::vector<Rational> pencil = {Rational(1, 2), Rational(2), Rational(-3)};
  if (const json* pv = r.find(r.root(), "pencil")) {
    pencil.clear();
    if (!pv->is_array()) r.issue("/pencil", "expected array of rationals");
    for (std::size_t i = 0; pv->is_array() && i < pv->size(); ++i) {
      if (auto q = r.rational((*pv)[i], child("/pencil", i))) pencil.push_back(*q);
    }
  }
  r.check();
  const ZeroTestPolicy& pol = req.policy;
  Context fctx = F.context();
  s.report["prepotential"] = {{"entry", to_string(F.kind)}, {"F", to_string(F.prepotential())}};
  std::optional<HydroSystem2> flow;
  for (const std::string& q : req.questions) {
    s.ask(q, [&] {
      if (q == "wdvv") {
        WdvvResidual w = wdvv_residual(F);
        json out;
        out["associativity"] = s.decisive(combined_zero(w.associativity.entries(), fctx, pol));
        if (w.euler) {
          out["euler"] = s.decisive(combined_zero(w.euler->entries(), fctx, pol));
          out["charge"] = to_string(F.charge());
        }
        s.report["wdvv"] = out;
      } else if (q == "flow" || q == "trimetric") {
        if (!flow) flow = primary_flow(F, pol);
        if (q == "flow") {
          json out;
          if (flow->lambda) out["lambda"] = {to_string((*flow->lambda)[0]), to_string((*flow->lambda)[1])};
          if (flow->riemann) out["riemann"] = {to_string((*flow->riemann)[0]), to_string((*flow->riemann)[1])};
          KillingCount k = hamiltonian_count(*flow, pol);
          out["count"] = k.count;
          out["evidence"] = evidence_json(k.evidence);
          s.report["flow"] = out;
        } else {
          Connection2D conn = characteristic_connection(*flow, pol);
          json rows = json::array();
          for (const auto& C : trimetric) {
            HamiltonianMetric m = trimetric_family(*flow, C[0], C[1], C[2], pol);
            auto K = metric_to_killing(m, *flow);
            Tensor<Expr> kr = killing_residual(conn, K);
            auto h = hamiltonian_residuals(m, *flow);
            rows.push_back({{"C", {to_string(C[0]), to_string(C[1]), to_string(C[2])}},
                            {"killing", s.decisive(combined_zero({kr(0, 0), kr(0, 1), kr(1, 1)}, flow->ctx, pol))},
                            {"hamiltonian", s.decisive(combined_zero({h[0], h[1], h[2]}, flow->ctx, pol))}});
          }
          s.report["trimetric"] = rows;
        }
      } else if (q == "witness") {
        Expr w = third_flatness_witness(F);
        json out = s.decisive(is_identically_zero(w, fctx, pol));
        out["expr"] = to_string(w);
        s.report["witness"] = out;
      } else if (q == "pencil") {
        FrobeniusData d = frobenius_data(F);
        json out = json::object();
        for (const Rational& lam : pencil) {
          out[to_string(lam)] = s.decisive(combined_zero(flat_pencil_residual(d, lam), d.ctx, pol));
        }
        s.report["pencil"] = out;
      }
    });
  }
}

void run_verify_sigma(Reader& r, Request& req, Session& s) {
  ProjectiveODE ode = read_ode(r, req.ctx);
  const json& root = r.root();
  const json* sigma = r.object(root, "sigma", "");
  const json* metric = r.object(root, "metric", "");
  if (bool(sigma) == bool(metric)) {
    r.issue("", "expected exactly one of sigma or metric");
    r.check();
  }
  const ZeroTestPolicy& pol = req.policy;
  const Context& ctx = req.ctx;
  std::function<SigmaCandidate()> make;
  if (sigma) {
    r.only(*sigma, {"psi1", "psi2", "psi3"}, "/sigma");
    SigmaCandidate sc{r.required_expr(ctx, *sigma, "psi1", "/sigma"), r.required_expr(ctx, *sigma, "psi2", "/sigma"),
                      r.required_expr(ctx, *sigma, "psi3", "/sigma")};
    make = [sc] { return sc; };
  } else if (auto family = r.string(*metric, "family", "/metric")) {
    bool piii = *family == "piii";
    if (!piii && *family != "pv") r.issue("/metric/family", "expected 'piii' or 'pv'");
    std::string second = piii ? "gamma" : "beta";
    r.only(*metric, {"family", "alpha", second, "A", "B"}, "/metric");
    Expr a = r.required_expr(ctx, *metric, "alpha", "/metric");
    Expr b = r.required_expr(ctx, *metric, second, "/metric");
    Expr A = r.required_expr(ctx, *metric, "A", "/metric");
    Expr B = r.required_expr(ctx, *metric, "B", "/metric");
    make = [=, &ctx, &pol] {
      MetricCandidate g = piii ? metric_piii(ctx, a, b, A, B) : metric_pv(ctx, a, b, A, B);
      return metric_to_sigma(g, ctx, pol);
    };
  } else {
    r.only(*metric, {"E", "F", "G"}, "/metric");
    MetricCandidate g{r.required_expr(ctx, *metric, "E", "/metric"), r.required_expr(ctx, *metric, "F", "/metric"),
                      r.required_expr(ctx, *metric, "G", "/metric")};
    make = [=, &ctx, &pol] { return metric_to_sigma(g, ctx, pol); };
  }
  r.check();
  s.ask("sigma", [&] {
    SigmaCandidate sc = make();
    auto res = metrisability_residual(ode, sc);
    auto v = are_identically_zero({res[0], res[1], res[2], res[3]}, ctx, pol);
    json rows = json::array();
    for (const ZeroResult& z : v) rows.push_back(s.decisive(z));
    s.report["residual"] = rows;
    ZeroResult all = combined(v);
    s.report["metrisable"] = all.is_zero();
    s.report["nondegenerate"] = s.decisive(is_identically_zero(sc.delta(), ctx, pol)).at("verdict") == "NonZero";
  });
}

void run_verify_integral(Reader& r, Request& req, Session& s) {
  ProjectiveODE ode = read_ode(r, req.ctx);
  std::string p = r.string(r.root(), "p", "").value_or("p");
  if (req.ctx.declares(p)) {
    r.issue("/p", "must not be a declared identifier");
    r.check();
  }
  Context with_p = req.ctx;
  with_p.variables.push_back(p);
  Expr I = r.required_expr(with_p, r.root(), "integral", "");
  r.check();
  s.ask("integral", [&] {
    ZeroResult z = is_identically_zero(conservation_residual(I, ode, p), with_p, req.policy);
    s.report["residual"] = s.decisive(z);
    s.report["conserved"] = z.is_zero();
  });
}

json policy_echo(const ZeroTestPolicy& pol) {
  json out;
  out["seed"] = pol.rng_seed;
  out["samples"] = pol.sample_count;
  out["precision"] = pol.precision_bits;
  out["box"] = {to_string(pol.box_lo), to_string(pol.box_hi)};
  if (!pol.boxes.empty()) {
    json b = json::object();
    for (const auto& [n, iv] : pol.boxes) b[n] = {to_string(iv.first), to_string(iv.second)};
    out["boxes"] = b;
  }
  if (!pol.fixed.empty()) {
    json f = json::object();
    for (const auto& [n, q] : pol.fixed) f[n] = to_string(q);
    out["fixed"] = f;
  }
  return out;
}

json input_error_report(const std::string& kind, const std::vector<Issue>& issues) {
  json out;
  out["schema"] = kSchema;
  if (!kind.empty()) out["kind"] = kind;
  out["status"] = "input-error";
  json errs = json::array();
  for (const Issue& i : issues) errs.push_back({{"path", i.path}, {"message", i.message}});
  out["errors"] = errs;
  return out;
}

std::string read_kind(Reader& r, const Options& o) {
  std::string want = o.kind;
  auto kind = r.string(r.root(), "kind", "");
  if (kind && !kKindFields.count(*kind)) {
    r.issue("/kind", "unknown kind '" + *kind + "'");
    r.check();
  }
  if (!kind && want.empty()) {
    r.issue("/kind", "missing required field");
    r.check();
  }
  if (kind && !want.empty() && *kind != want) {
    r.issue("/kind", "request kind '" + *kind + "' does not match subcommand kind '" + want + "'");
    r.check();
  }
  return kind ? *kind : want;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [sub, kind] : kSubcommandKinds) v.push_back(sub);
    return v;
  }();
  return names;
}

std::string kind_of_subcommand(const std::string& sub) {
  auto it = kSubcommandKinds.find(sub);
  if (it == kSubcommandKinds.end()) throw std::invalid_argument("unknown subcommand '" + sub + "'");
  return it->second;
}

Outcome run(const json& request, const Options& opts) {
  std::string kind = opts.kind;
  auto t0 = Clock::now();
  try {
    Reader r(request);
    if (!request.is_object()) {
      r.issue("", "expected a JSON object");
      r.check();
    }
    if (auto schema = r.string(request, "schema", ""); schema && *schema != kSchema) {
      r.issue("/schema", "expected \"" + std::string(kSchema) + "\"");
    }
    kind = read_kind(r, opts);
    std::set<std::string> allowed = kCommonFields;
    allowed.insert(kKindFields.at(kind).begin(), kKindFields.at(kind).end());
    r.only(request, allowed, "");
    r.string(request, "label", "");

    Request req;
    req.kind = kind;
    std::vector<std::string> vars = {"X", "Y"};
    if (kind == "ode" || kind == "verify-sigma" || kind == "verify-integral") vars = {"x", "y"};
    if (kind == "frobenius") vars = {"t1", "t2"};
    req.ctx = read_context(r, vars);
    if (kind == "frobenius" && req.ctx.variables != std::vector<std::string>{"t1", "t2"}) {
      r.issue("/context/variables", "frobenius requests use the flat coordinates [\"t1\", \"t2\"]");
    }
    req.policy = read_policy(r, opts);
    req.questions = read_questions(r, kind);

    Session s;
    s.timing = opts.timing;
    s.report["schema"] = kSchema;
    s.report["kind"] = kind;
    if (auto label = r.string(request, "label", "")) s.report["label"] = *label;
    s.report["policy"] = policy_echo(req.policy);
    if (!req.questions.empty()) s.report["question"] = req.questions;

    if (kind == "ode") {
      run_ode(r, req, s);
    } else if (kind == "connection") {
      run_connection(r, req, s);
    } else if (kind == "hydro") {
      run_hydro(r, req, s);
    } else if (kind == "frobenius") {
      run_frobenius(r, req, s);
    } else if (kind == "verify-sigma") {
      run_verify_sigma(r, req, s);
    } else {
      run_verify_integral(r, req, s);
    }
    s.report["status"] = s.unclassified ? "unclassified" : "classified";
    if (opts.timing) {
      s.timings["total"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      s.report["timing_ms"] = s.timings;
    }
    return {s.unclassified ? Unclassified : Classified, s.report};
  } catch (const InvalidRequest& e) {
    return {InputError, input_error_report(kind, e.issues())};
  } catch (const ParseError& e) {
    return {InputError, input_error_report(kind, {{"/", e.what()}})};
  } catch (const Error& e) {
    return {InputError, input_error_report(kind, {{"/", std::string(error_name(e)) + ": " + e.what()}})};
  }
}

Outcome run_text(const std::string& text, const Options& opts) {
  json request;
  try {
    request = json::parse(text);
  } catch (const json::parse_error& e) {
    return {InputError, input_error_report(opts.kind, {{"/", std::string("malformed JSON: ") + e.what()}})};
  }
  return run(request, opts);
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_text(const json& report) {
  std::ostringstream out;
  json flat = report.flatten();
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    out << it.key() << " = ";
    if (it->is_string()) {
      out << it->get<std::string>();
    } else {
      out << it->dump();
    }
    out << "\n";
  }
  return out.str();
}

std::pair<Rational, Rational> parse_box(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("expected \"lo,hi\"");
  Rational lo = parse_rational(text.substr(0, comma));
  Rational hi = parse_rational(text.substr(comma + 1));
  if (!(lo < hi)) throw std::invalid_argument("expected lo < hi");
  return {lo, hi};
}

}  // namespace projclass::cli
