#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hsp/rational.hpp"
#include "hsp/variable.hpp"

namespace hsp {

// Sparse exponent vector: (variable, exponent) pairs sorted by VariableId,
// exponents strictly positive. The empty monomial is 1.
struct Monomial {
  std::vector<std::pair<VariableId, std::uint32_t>> vars;

  std::uint32_t degree() const;
  std::uint32_t exponent_of(VariableId v) const;
  bool operator==(const Monomial& o) const { return vars == o.vars; }
};

// Canonical term order: total degree descending, then at the first variable
// (in ascending VariableId order) whose exponents differ, the monomial with
// the larger exponent comes first. This is a graded lexicographic order, so
// the first stored term of a polynomial is its leading term.
// Returns <0 if a precedes b, 0 if equal, >0 otherwise.
int monomial_cmp(const Monomial& a, const Monomial& b);
inline bool monomial_before(const Monomial& a, const Monomial& b) {
  return monomial_cmp(a, b) < 0;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b);
bool monomial_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial monomial_div(const Monomial& b, const Monomial& a);  // b / a, pre: a | b

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

struct Term {
  Monomial mono;
  Rational coeff;
};
inline bool operator==(const Term& a, const Term& b) {
  return a.coeff == b.coeff && a.mono == b.mono;
}

// Exact sparse polynomial over the rationals in the z/xi/u/s/d variables.
// Terms are stored in canonical order with nonzero coefficients only, so
// equality is plain structural equality. Values are immutable in practice:
// every operation returns a fresh polynomial.
class Polynomial {
 public:
  Polynomial() = default;  // zero

  static Polynomial constant(const Rational& c);
  static Polynomial from_int(long v);
  static Polynomial variable(VariableId v, std::uint32_t exp = 1);
  static Polynomial term(const Rational& c, const Monomial& m);
  // Sorts, merges duplicates, drops zeros.
  static Polynomial from_terms(std::vector<Term> terms);
  // Trusted fast path: terms must already be canonical (sorted, nonzero).
  static Polynomial from_sorted_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // pre: is_constant()
  std::uint32_t total_degree() const;
  const Term& leading_term() const;  // pre: !is_zero()

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  std::vector<Term> terms_;
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_neg(const Polynomial& a);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, const Rational& c);
Polynomial poly_pow(const Polynomial& a, std::uint32_t e);
// pre: b nonzero and b | a; throws std::domain_error otherwise.
Polynomial poly_exact_div(const Polynomial& a, const Polynomial& b);
Polynomial poly_substitute(const Polynomial& p,
                           const std::map<VariableId, Polynomial>& bindings);
// Coefficient of var^degree, with var removed from the returned terms.
Polynomial poly_coeff_of(const Polynomial& p, VariableId var, std::uint32_t degree);

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) { return poly_add(a, b); }
inline Polynomial operator-(const Polynomial& a, const Polynomial& b) { return poly_sub(a, b); }
inline Polynomial operator-(const Polynomial& a) { return poly_neg(a); }
inline Polynomial operator*(const Polynomial& a, const Polynomial& b) { return poly_mul(a, b); }

// Plain-text form: terms in canonical order joined by " + ", each term
// "coeff * z[i,j]^e * xi[i,j]^e * u^e * s^e * d[i,j]^e" with unit
// coefficients elided ("-" kept for -1) and negative coefficients inline.
std::string to_string(const Polynomial& p);
Polynomial parse_polynomial(const std::string& text);

}  // namespace hsp
