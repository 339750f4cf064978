#pragma once

#include "hsp/polynomial.hpp"

namespace hsp {

// Polynomial-coefficient differential operator in normal form: each term is
// (monomial in z and s) * (monomial in the d[i,j] placeholders), with every
// d standing for the derivative in the matching z variable. The underlying
// Polynomial treats d as one more commuting variable, which is exactly the
// normal-form bookkeeping; composition restores the commutation relation
// [d[i,j], z[i,j]] = 1.
class WeylOperator {
 public:
  WeylOperator() = default;  // zero operator

  static WeylOperator one();
  // pre: p only uses z, s and d variables.
  static WeylOperator from_polynomial(Polynomial p);

  const Polynomial& repr() const { return repr_; }
  bool is_zero() const { return repr_.is_zero(); }
  bool operator==(const WeylOperator& o) const { return repr_ == o.repr_; }
  bool operator!=(const WeylOperator& o) const { return !(*this == o); }

 private:
  Polynomial repr_;
};

WeylOperator weyl_add(const WeylOperator& a, const WeylOperator& b);
WeylOperator weyl_sub(const WeylOperator& a, const WeylOperator& b);
WeylOperator weyl_neg(const WeylOperator& a);
WeylOperator weyl_scale(const WeylOperator& a, const Rational& c);
WeylOperator weyl_compose(const WeylOperator& a, const WeylOperator& b);
WeylOperator weyl_commutator(const WeylOperator& a, const WeylOperator& b);
// Apply to a polynomial in z variables only (s may appear in the result).
Polynomial weyl_apply(const WeylOperator& a, const Polynomial& p);
// Full symbol of the normal form: replace every d[i,j] by xi[i,j].
Polynomial weyl_symbol(const WeylOperator& a);

std::string to_string(const WeylOperator& a);

}  // namespace hsp
