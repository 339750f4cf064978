#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "hsp/polynomial.hpp"

using namespace hsp;

namespace {

Polynomial v(VariableId id) { return Polynomial::variable(id); }

}  // namespace

TEST_CASE("variable ids pack and print") {
  CHECK(format_variable(var_z(1, 2)) == "z[1,2]");
  CHECK(format_variable(var_xi(3, 14)) == "xi[3,14]");
  CHECK(format_variable(var_u()) == "u");
  CHECK(format_variable(var_s()) == "s");
  CHECK(format_variable(var_d(2, 2)) == "d[2,2]");
  CHECK(var_z(1, 2) != var_z(2, 1));
  CHECK(var_z(1, 2) < var_xi(1, 2));
  CHECK(var_xi(9, 9) < var_u());
  CHECK(var_u() < var_s());
  CHECK(var_s() < var_d(1, 1));
}

TEST_CASE("monomial order is graded lex with higher exponent first on ties") {
  const Monomial one;
  Monomial a;  // z[1,1]^2
  a.vars = {{var_z(1, 1), 2}};
  Monomial ab;  // z[1,1] * z[1,2]
  ab.vars = {{var_z(1, 1), 1}, {var_z(1, 2), 1}};
  Monomial b2;  // z[1,2]^2
  b2.vars = {{var_z(1, 2), 2}};
  CHECK(monomial_cmp(a, a) == 0);
  // Same degree: compare at the smallest id where exponents differ.
  CHECK(monomial_before(a, ab));
  CHECK(monomial_before(ab, b2));
  // Degree dominates.
  CHECK(monomial_before(b2, one));
  Monomial s1;
  s1.vars = {{var_s(), 1}};
  CHECK(monomial_before(a, s1));
  CHECK(a.degree() == 2);
  CHECK(a.exponent_of(var_z(1, 1)) == 2);
  CHECK(a.exponent_of(var_s()) == 0);
}

TEST_CASE("from_terms merges, cancels and sorts") {
  Monomial za;
  za.vars = {{var_z(1, 1), 1}};
  std::vector<Term> terms{{za, rat(2)}, {Monomial{}, rat(5)}, {za, rat(-2)}};
  const Polynomial p = Polynomial::from_terms(terms);
  CHECK(p == Polynomial::from_int(5));
  CHECK(p.is_constant());
  CHECK(p.constant_value() == rat(5));
  CHECK(Polynomial::from_terms({}).is_zero());
}

TEST_CASE("leading term and degree") {
  const Polynomial p = v(var_s()) + v(var_z(1, 2)) * v(var_z(1, 2)) + Polynomial::from_int(7);
  CHECK(p.total_degree() == 2);
  CHECK(p.leading_term().mono.exponent_of(var_z(1, 2)) == 2);
  CHECK(p.terms().size() == 3);
  CHECK(p.terms().back().mono.degree() == 0);
}

TEST_CASE("ring axioms on sample values") {
  const Polynomial a = v(var_z(1, 2)) + v(var_s());
  const Polynomial b = v(var_xi(1, 2)) - Polynomial::from_int(3);
  const Polynomial c = v(var_u()) * v(var_z(1, 2));
  CHECK(a + b == b + a);
  CHECK((a + b) + c == a + (b + c));
  CHECK(a * b == b * a);
  CHECK((a * b) * c == a * (b * c));
  CHECK(a * (b + c) == a * b + a * c);
  CHECK(a - a == Polynomial());
  CHECK(a * Polynomial() == Polynomial());
  CHECK(poly_neg(a) + a == Polynomial());
  CHECK(poly_scale(a, rat(3, 2)) + poly_scale(a, rat(1, 2)) == a + a);
}

TEST_CASE("poly_pow") {
  const Polynomial a = v(var_z(1, 2)) + Polynomial::from_int(1);
  CHECK(poly_pow(a, 0) == Polynomial::from_int(1));
  CHECK(poly_pow(a, 1) == a);
  CHECK(poly_pow(a, 3) == a * a * a);
  CHECK(poly_pow(Polynomial(), 2).is_zero());
}

TEST_CASE("exact division") {
  const Polynomial a = v(var_z(1, 2)) + v(var_s());
  const Polynomial b = v(var_xi(1, 2)) * v(var_xi(1, 2)) - Polynomial::from_int(4);
  CHECK(poly_exact_div(a * b, b) == a);
  CHECK(poly_exact_div(a * b, a) == b);
  // Single-term divisor path.
  const Polynomial m = poly_scale(v(var_z(1, 2)) * v(var_s()), rat(2));
  CHECK(poly_exact_div(a * m, m) == a);
  CHECK(poly_exact_div(Polynomial(), b).is_zero());
  CHECK_THROWS_AS(poly_exact_div(a, b), std::domain_error);
  CHECK_THROWS_AS(poly_exact_div(v(var_z(1, 2)), v(var_s())), std::domain_error);
}

TEST_CASE("substitution") {
  const Polynomial p = v(var_u()) * v(var_u()) + v(var_z(1, 2));
  const std::map<VariableId, Polynomial> bind{{var_u(), v(var_s()) - Polynomial::from_int(1)}};
  const Polynomial q = poly_substitute(p, bind);
  const Polynomial expect = v(var_s()) * v(var_s()) - poly_scale(v(var_s()), rat(2)) +
                            Polynomial::from_int(1) + v(var_z(1, 2));
  CHECK(q == expect);
  // Untouched variables pass through.
  CHECK(poly_substitute(p, {}) == p);
  // Substituting zero kills the variable's terms.
  const std::map<VariableId, Polynomial> kill{{var_u(), Polynomial()}};
  CHECK(poly_substitute(p, kill) == v(var_z(1, 2)));
}

TEST_CASE("coefficient extraction") {
  const Polynomial p = poly_scale(v(var_u()) * v(var_u()) * v(var_s()), rat(3)) +
                       v(var_u()) * v(var_z(1, 2)) + Polynomial::from_int(9);
  CHECK(poly_coeff_of(p, var_u(), 2) == poly_scale(v(var_s()), rat(3)));
  CHECK(poly_coeff_of(p, var_u(), 1) == v(var_z(1, 2)));
  CHECK(poly_coeff_of(p, var_u(), 0) == Polynomial::from_int(9));
  CHECK(poly_coeff_of(p, var_u(), 3).is_zero());
}

TEST_CASE("printing and parsing round trip") {
  const Polynomial p = poly_scale(v(var_z(1, 2)) * v(var_xi(1, 2)), rat(-3, 2)) +
                       v(var_s()) * v(var_s()) + poly_scale(v(var_u()), rat(1, 7)) -
                       Polynomial::from_int(2);
  CHECK(parse_polynomial(to_string(p)) == p);
  CHECK(to_string(Polynomial()) == "0");
  CHECK(to_string(Polynomial::from_int(1)) == "1");
  CHECK(to_string(poly_neg(v(var_s()))) == "-s");
  CHECK(to_string(v(var_z(1, 2)) * v(var_z(1, 2))) == "z[1,2]^2");
  CHECK(parse_polynomial("2 * z[1,1] * xi[1,1]") ==
        poly_scale(v(var_z(1, 1)) * v(var_xi(1, 1)), rat(2)));
  CHECK(parse_polynomial("s + -z[1,2] * d[1,2]") ==
        v(var_s()) - v(var_z(1, 2)) * v(var_d(1, 2)));
}

TEST_CASE("canonical form makes equality structural") {
  const Polynomial a = v(var_z(1, 1)) + v(var_z(1, 2));
  const Polynomial b = v(var_z(1, 2)) + v(var_z(1, 1));
  CHECK(a == b);
  CHECK(a.terms() == b.terms());
  const Polynomial c = poly_scale(a, rat(1, 3));
  CHECK(poly_scale(c, rat(3)) == a);
}
