#include "hsp/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hsp {

std::string format_variable(VariableId v) {
  switch (var_kind(v)) {
    case VarKind::U: return "u";
    case VarKind::S: return "s";
    case VarKind::Z: return "z[" + std::to_string(var_i(v)) + "," + std::to_string(var_j(v)) + "]";
    case VarKind::XI: return "xi[" + std::to_string(var_i(v)) + "," + std::to_string(var_j(v)) + "]";
    case VarKind::D: return "d[" + std::to_string(var_i(v)) + "," + std::to_string(var_j(v)) + "]";
  }
  throw std::logic_error("bad variable kind");
}

VariableId parse_variable(const std::string& text) {
  if (text == "u") return var_u();
  if (text == "s") return var_s();
  VarKind kind;
  std::size_t pos;
  if (text.rfind("z[", 0) == 0) { kind = VarKind::Z; pos = 2; }
  else if (text.rfind("xi[", 0) == 0) { kind = VarKind::XI; pos = 3; }
  else if (text.rfind("d[", 0) == 0) { kind = VarKind::D; pos = 2; }
  else throw std::invalid_argument("bad variable: " + text);
  std::size_t comma = text.find(',', pos);
  if (comma == std::string::npos || text.back() != ']')
    throw std::invalid_argument("bad variable: " + text);
  int i = std::stoi(text.substr(pos, comma - pos));
  int j = std::stoi(text.substr(comma + 1, text.size() - comma - 2));
  if (i <= 0 || j <= 0) throw std::invalid_argument("bad variable index: " + text);
  return make_var(kind, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& [v, e] : vars) d += e;
  return d;
}

std::uint32_t Monomial::exponent_of(VariableId v) const {
  for (const auto& [w, e] : vars)
    if (w == v) return e;
  return 0;
}

int monomial_cmp(const Monomial& a, const Monomial& b) {
  std::uint32_t da = a.degree(), db = b.degree();
  if (da != db) return da > db ? -1 : 1;
  std::size_t i = 0, j = 0;
  while (i < a.vars.size() && j < b.vars.size()) {
    const auto& [va, ea] = a.vars[i];
    const auto& [vb, eb] = b.vars[j];
    if (va != vb) return va < vb ? -1 : 1;  // the other has exponent 0 here
    if (ea != eb) return ea > eb ? -1 : 1;
    ++i; ++j;
  }
  // Equal degree with all shared entries equal forces both exhausted.
  if (i < a.vars.size()) return -1;
  if (j < b.vars.size()) return 1;
  return 0;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.vars.reserve(a.vars.size() + b.vars.size());
  std::size_t i = 0, j = 0;
  while (i < a.vars.size() && j < b.vars.size()) {
    if (a.vars[i].first < b.vars[j].first) r.vars.push_back(a.vars[i++]);
    else if (b.vars[j].first < a.vars[i].first) r.vars.push_back(b.vars[j++]);
    else {
      r.vars.emplace_back(a.vars[i].first, a.vars[i].second + b.vars[j].second);
      ++i; ++j;
    }
  }
  for (; i < a.vars.size(); ++i) r.vars.push_back(a.vars[i]);
  for (; j < b.vars.size(); ++j) r.vars.push_back(b.vars[j]);
  return r;
}

bool monomial_divides(const Monomial& a, const Monomial& b) {
  std::size_t j = 0;
  for (const auto& [v, e] : a.vars) {
    while (j < b.vars.size() && b.vars[j].first < v) ++j;
    if (j == b.vars.size() || b.vars[j].first != v || b.vars[j].second < e) return false;
  }
  return true;
}

Monomial monomial_div(const Monomial& b, const Monomial& a) {
  Monomial r;
  r.vars.reserve(b.vars.size());
  std::size_t i = 0;
  for (const auto& [v, e] : b.vars) {
    std::uint32_t sub = 0;
    if (i < a.vars.size() && a.vars[i].first == v) sub = a.vars[i++].second;
    if (sub > e) throw std::domain_error("monomial_div: not divisible");
    if (e > sub) r.vars.emplace_back(v, e - sub);
  }
  if (i != a.vars.size()) throw std::domain_error("monomial_div: not divisible");
  return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& [v, e] : m.vars) {
    h = (h ^ v) * 1099511628211ull;
    h = (h ^ e) * 1099511628211ull;
  }
  return h;
}

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  if (!rat_is_zero(c)) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::from_int(long v) { return constant(Rational(v)); }

Polynomial Polynomial::variable(VariableId v, std::uint32_t exp) {
  if (exp == 0) return from_int(1);
  Monomial m;
  m.vars.emplace_back(v, exp);
  return term(Rational(1), m);
}

Polynomial Polynomial::term(const Rational& c, const Monomial& m) {
  Polynomial p;
  if (!rat_is_zero(c)) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return monomial_before(a.mono, b.mono); });
  Polynomial p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
      p.terms_.back().coeff += t.coeff;
    else
      p.terms_.push_back(std::move(t));
    if (!p.terms_.empty() && rat_is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
  }
  return p;
}

Polynomial Polynomial::from_sorted_terms(std::vector<Term> terms) {
  Polynomial p;
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.vars.empty());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::domain_error("constant_value of nonconstant polynomial");
  return terms_[0].coeff;
}

std::uint32_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_[0].mono.degree();
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading_term of zero polynomial");
  return terms_[0];
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  std::vector<Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  std::size_t i = 0, j = 0;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  while (i < ta.size() && j < tb.size()) {
    int c = monomial_cmp(ta[i].mono, tb[j].mono);
    if (c < 0) out.push_back(ta[i++]);
    else if (c > 0) out.push_back(tb[j++]);
    else {
      Rational s = ta[i].coeff + tb[j].coeff;
      if (!rat_is_zero(s)) out.push_back({ta[i].mono, s});
      ++i; ++j;
    }
  }
  for (; i < ta.size(); ++i) out.push_back(ta[i]);
  for (; j < tb.size(); ++j) out.push_back(tb[j]);
  return Polynomial::from_sorted_terms(std::move(out));
}

Polynomial poly_neg(const Polynomial& a) {
  std::vector<Term> out = a.terms();
  for (auto& t : out) t.coeff = -t.coeff;
  return Polynomial::from_sorted_terms(std::move(out));
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) { return poly_add(a, poly_neg(b)); }

Polynomial poly_scale(const Polynomial& a, const Rational& c) {
  if (rat_is_zero(c)) return Polynomial();
  std::vector<Term> out = a.terms();
  for (auto& t : out) t.coeff *= c;
  return Polynomial::from_sorted_terms(std::move(out));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.empty() || tb.empty()) return Polynomial();
  if (ta.size() == 1 && ta[0].mono.vars.empty()) return poly_scale(b, ta[0].coeff);
  if (tb.size() == 1 && tb[0].mono.vars.empty()) return poly_scale(a, tb[0].coeff);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(ta.size() * tb.size());
  for (const auto& x : ta)
    for (const auto& y : tb) {
      Monomial m = monomial_mul(x.mono, y.mono);
      auto [it, fresh] = acc.try_emplace(std::move(m), Rational(0));
      if (fresh) it->second = x.coeff * y.coeff;
      else it->second += x.coeff * y.coeff;
    }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!rat_is_zero(c)) terms.push_back({m, c});
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return monomial_before(x.mono, y.mono); });
  return Polynomial::from_sorted_terms(std::move(terms));
}

Polynomial poly_pow(const Polynomial& a, std::uint32_t e) {
  Polynomial r = Polynomial::from_int(1);
  Polynomial base = a;
  while (e > 0) {
    if (e & 1u) r = poly_mul(r, base);
    e >>= 1u;
    if (e > 0) base = poly_mul(base, base);
  }
  return r;
}

Polynomial poly_exact_div(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("poly_exact_div: division by zero");
  const Term& lb = b.leading_term();
  if (b.terms().size() == 1) {
    // Single-term divisor: divide termwise, preserving order.
    std::vector<Term> quot;
    quot.reserve(a.terms().size());
    for (const Term& t : a.terms()) {
      if (!monomial_divides(lb.mono, t.mono))
        throw std::domain_error("poly_exact_div: not divisible");
      quot.push_back(Term{monomial_div(t.mono, lb.mono), t.coeff / lb.coeff});
    }
    return Polynomial::from_sorted_terms(std::move(quot));
  }
  Polynomial rem = a;
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const Term& lr = rem.leading_term();
    if (!monomial_divides(lb.mono, lr.mono))
      throw std::domain_error("poly_exact_div: not divisible");
    Term qt{monomial_div(lr.mono, lb.mono), lr.coeff / lb.coeff};
    quot.push_back(qt);
    rem = poly_sub(rem, poly_mul(Polynomial::term(qt.coeff, qt.mono), b));
  }
  return Polynomial::from_terms(std::move(quot));
}

Polynomial poly_substitute(const Polynomial& p,
                           const std::map<VariableId, Polynomial>& bindings) {
  if (bindings.empty()) return p;
  // Cache powers of each bound replacement as they are needed.
  std::map<VariableId, std::vector<Polynomial>> powers;
  Polynomial out;
  for (const auto& t : p.terms()) {
    Monomial keep;
    Polynomial factor = Polynomial::from_int(1);
    bool bound = false;
    for (const auto& [v, e] : t.mono.vars) {
      auto it = bindings.find(v);
      if (it == bindings.end()) {
        keep.vars.emplace_back(v, e);
        continue;
      }
      bound = true;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Polynomial::from_int(1));
      while (pw.size() <= e) pw.push_back(poly_mul(pw.back(), it->second));
      factor = poly_mul(factor, pw[e]);
    }
    Polynomial term_val = Polynomial::term(t.coeff, keep);
    out = poly_add(out, bound ? poly_mul(term_val, factor) : term_val);
  }
  return out;
}

Polynomial poly_coeff_of(const Polynomial& p, VariableId var, std::uint32_t degree) {
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    if (t.mono.exponent_of(var) != degree) continue;
    Monomial m;
    for (const auto& [v, e] : t.mono.vars)
      if (v != var) m.vars.emplace_back(v, e);
    terms.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(std::move(terms));
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first) out += " + ";
    first = false;
    if (t.mono.vars.empty()) {
      out += rational_to_string(t.coeff);
      continue;
    }
    bool unit = t.coeff == 1;
    bool neg_unit = t.coeff == -1;
    if (neg_unit) out += "-";
    else if (!unit) out += rational_to_string(t.coeff) + " * ";
    bool first_var = true;
    for (const auto& [v, e] : t.mono.vars) {
      if (!first_var) out += " * ";
      first_var = false;
      out += format_variable(v);
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

namespace {

void strip_spaces(std::string& s) {
  std::string t;
  t.reserve(s.size());
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  s = std::move(t);
}

// One term of the serialized form, already stripped of spaces.
Term parse_term(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty term");
  Term t{Monomial{}, Rational(1)};
  std::size_t pos = 0;
  bool have_coeff = false;
  if (text[0] == '-') {
    t.coeff = Rational(-1);
    pos = 1;
  }
  if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    std::size_t end = pos;
    while (end < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '/'))
      ++end;
    t.coeff *= rational_from_string(text.substr(pos, end - pos));
    pos = end;
    have_coeff = true;
  }
  std::vector<std::pair<VariableId, std::uint32_t>> factors;
  while (pos < text.size()) {
    if (text[pos] == '*') { ++pos; continue; }
    std::size_t end = pos;
    while (end < text.size() && text[end] != '*' && text[end] != '^') ++end;
    std::string name = text.substr(pos, end - pos);
    std::uint32_t exp = 1;
    pos = end;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      std::size_t e2 = pos;
      while (e2 < text.size() && std::isdigit(static_cast<unsigned char>(text[e2]))) ++e2;
      if (e2 == pos) throw std::invalid_argument("bad exponent in term: " + text);
      exp = static_cast<std::uint32_t>(std::stoul(text.substr(pos, e2 - pos)));
      pos = e2;
    }
    factors.emplace_back(parse_variable(name), exp);
  }
  if (factors.empty() && !have_coeff && t.coeff == -1)
    throw std::invalid_argument("bare sign in term: " + text);
  std::sort(factors.begin(), factors.end());
  for (const auto& [v, e] : factors) {
    if (!t.mono.vars.empty() && t.mono.vars.back().first == v)
      t.mono.vars.back().second += e;
    else if (e > 0)
      t.mono.vars.emplace_back(v, e);
  }
  return t;
}

}  // namespace

Polynomial parse_polynomial(const std::string& text) {
  std::string s = text;
  strip_spaces(s);
  if (s.empty() || s == "0") return Polynomial();
  std::vector<Term> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find('+', pos);
    if (next == std::string::npos) next = s.size();
    terms.push_back(parse_term(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return Polynomial::from_terms(std::move(terms));
}

}  // namespace hsp
