#pragma once

#include <vector>

#include "hsp/polynomial.hpp"

namespace hsp {

// Dense rectangular matrix with polynomial entries, row-major.
struct PolyMatrix {
  int rows = 0, cols = 0;
  std::vector<Polynomial> entries;

  PolyMatrix() = default;
  PolyMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {}

  Polynomial& at(int r, int c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
  const Polynomial& at(int r, int c) const {
    return entries[static_cast<std::size_t>(r) * cols + c];
  }
  bool operator==(const PolyMatrix& o) const {
    return rows == o.rows && cols == o.cols && entries == o.entries;
  }
};

PolyMatrix pm_identity(int n);
PolyMatrix pm_scalar(int n, const Polynomial& p);  // p on the diagonal
PolyMatrix j_matrix(int n);                        // ones on the antidiagonal
PolyMatrix pm_add(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix pm_sub(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix pm_neg(const PolyMatrix& a);
PolyMatrix pm_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix pm_scale(const PolyMatrix& a, const Polynomial& p);
PolyMatrix pm_transpose(const PolyMatrix& a);
bool pm_is_zero(const PolyMatrix& a);
bool is_alternating(const PolyMatrix& a);

// 1-based, strictly increasing index list.
using IndexSubset = std::vector<int>;
std::vector<IndexSubset> subsets_of_size(int n, int k);  // lexicographic order
IndexSubset complement_subset(int n, const IndexSubset& s);

PolyMatrix submatrix(const PolyMatrix& m, const IndexSubset& rows, const IndexSubset& cols);

// Sign of the permutation sending (1..n) to (first, second), both ascending;
// pre: the two subsets partition [n].
int perm_sign(const IndexSubset& first, const IndexSubset& second);

// Oracle backend: full permutation expansion, dimension <= 6.
Polynomial det_leibniz(const PolyMatrix& m);
// Production backend: fraction-free elimination with fewest-terms pivoting.
Polynomial det_bareiss(const PolyMatrix& m);
// Production backend for dense symbolic entries: row expansion with memoized
// minors. No divisions, so it beats elimination when entries are polynomials
// in many variables.
Polynomial det_expansion(const PolyMatrix& m);

// Oracle backend: sum over perfect matchings with the crossing-number sign,
// normalized so Pf([[0,a],[-a,0]]) = a. Dimension <= 12.
Polynomial pfaffian_matchings(const PolyMatrix& m);
// Production backend: first-row Laplace expansion with memoized minors.
Polynomial pfaffian_expansion(const PolyMatrix& m);
// Pfaffian of m * J; pre: that product is alternating.
Polynomial pf_antidiag(const PolyMatrix& m);

// Minor summation, Pfaffian form. m is 2n x 2n with m * J_{2n} alternating,
// blocks [[a, b],[c, d]] with b*J and -J*c alternating and d = -J a^T J.
// Returns sum_k sum_{|I|=|J|=2k} sgn(Ibar,I) sgn(Jbar,J)
//   det(a^Ibar_Jbar) Pf((bJ)[I,I]) Pf((-Jc)[J,J]).
Polynomial msf_pf_rhs(const PolyMatrix& m, int n);

enum class DetSignMode { AsPrinted, AlternatingK, SubsetSign };

// Minor summation, determinant form, for the block matrix [[u 1_p, b],[c, v 1_q]]
// with b of shape p x q and c of shape q x p carrying parameters c_{i,j} at
// position (j,i). Returns sum_k sum_{|I|=|J|=k} sign(mode,I,J)
//   u^{p-k} v^{q-k} det(b^I_J) det(c^I_J) with c^I_J = c[J,I] read transposed.
Polynomial msf_det_rhs(const PolyMatrix& b, const PolyMatrix& c, const Polynomial& u,
                       const Polynomial& v, DetSignMode mode);

}  // namespace hsp
