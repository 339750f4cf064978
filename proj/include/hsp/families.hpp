#pragma once

#include <string>
#include <vector>

#include "hsp/matrix.hpp"
#include "hsp/weyl.hpp"

namespace hsp {

enum class FamilyKind { SOstar, Sp, SU };

// Descriptor of one classical Hermitian symmetric pair: SO*(2n), Sp(n,R), or
// SU(p,q) with p >= q >= 1. The coordinate variables z[i,j] run over pairs
// i < j (SOstar, alternating), i <= j (Sp, symmetric), or i in [p], j in [q]
// (SU, rectangular); xi and d follow the same index sets.
struct PairFamily {
  FamilyKind kind = FamilyKind::SOstar;
  int n = 0;         // SOstar / Sp
  int p = 0, q = 0;  // SU

  static PairFamily sostar(int n);
  static PairFamily sp(int n);
  static PairFamily su(int p, int q);

  int N() const;          // size of the defining matrices: 2n, 2n, p+q
  int rank_r() const;     // real rank: floor(n/2), n, q
  int dim_g() const;      // 2n^2-n, 2n^2+n, (p+q)^2-1
  int var_count() const;  // n(n-1)/2, n(n+1)/2, pq
  std::string name() const;  // "sostar", "sp", "su"
};

// Structured labels for basis elements. X0 spans the k-part for SOstar/Sp;
// H/E+/E- span it for SU; X+/X- are the abelian nilpotent parts.
enum class LabelKind { X0, Xplus, Xminus, H, Eplus, Eminus };

struct BasisElement {
  LabelKind label = LabelKind::X0;
  int i = 0, j = 0;  // H uses i only
  PolyMatrix mat;    // N x N, constant rational entries

  std::string name() const;  // "X0[1,2]", "X+[1,2]", "H[1]", "E-[2,1]", ...
};

// Basis of g in a fixed deterministic order: SOstar/Sp list X0 (all i,j),
// then X+, then X-, each block in lexicographic index order; SU lists
// H_1..H_{p+q-1}, then E+, E-, X+, X-.
std::vector<BasisElement> build_basis(const PairFamily& f);

// B(X,Y): trace(XY) for su, (1/2) trace(XY) for sostar/sp. Entries of X and Y
// must be constants.
Rational bilinear_form(const PairFamily& f, const PolyMatrix& X, const PolyMatrix& Y);

// Coefficient matrix of the dual basis: column j holds the coordinates of
// X_j^dual in the basis, obtained by inverting the Gram matrix of B.
std::vector<std::vector<Rational>> dual_coefficients(const PairFamily& f);

// Dual basis aligned with build_basis: B(X_i, X_j^dual) = delta_{ij}. Labels
// are carried over from the primal element at the same position.
std::vector<BasisElement> dual_basis(const PairFamily& f);

// Coordinates of m in the basis, computed as c_i = B(m, X_i^dual) against a
// precomputed dual basis.
std::vector<Rational> expand_in_basis(const PairFamily& f,
                                      const std::vector<BasisElement>& duals,
                                      const PolyMatrix& m);

// The holomorphic-model action of a basis element as a polynomial-coefficient
// differential operator, with s the formal character parameter. Index pairs
// outside the stored triangle are canonicalized (z[j,i] = -z[i,j] for SOstar,
// +z[i,j] for Sp, with d treated the same way; Sp doubles diagonal d).
WeylOperator dpi(const PairFamily& f, const BasisElement& b);

// Variable matrices. z_matrix is the n x n alternating (SOstar), n x n
// symmetric (Sp), or p x q (SU) matrix of coordinates; xi_matrix / d_matrix
// are the matching symbol and derivative matrices, with the Sp diagonal
// doubled (the tilde convention).
PolyMatrix z_matrix(const PairFamily& f);
PolyMatrix xi_matrix(const PairFamily& f);
PolyMatrix d_matrix(const PairFamily& f);

// Upper-right block of u(z): z_matrix * J_n for SOstar/Sp, z_matrix for SU.
PolyMatrix z_block(const PairFamily& f);

// u(z) = exp(sum z_{i,j} X+_{i,j}) = [[1, z_block],[0, 1]] exactly, since the
// nilpotent part squares to zero. u_of_z_inverse flips the sign of the block.
PolyMatrix u_of_z(const PairFamily& f);
PolyMatrix u_of_z_inverse(const PairFamily& f);

// u(z)^{-1} * m * u(z).
PolyMatrix conjugate_sigma(const PairFamily& f, const PolyMatrix& m);

// The symbol matrix sigma(X) = sum_i symbol(dpi(X_i^dual)) (x) X_i, an N x N
// polynomial matrix. With deformed set, the gamma_1 content of each entry is
// shifted by the auxiliary variable u: sigma-tilde = sigma + (s - u - gamma_1) W
// where W = [[-1, z_block],[0, 1]].
PolyMatrix build_sigma(const PairFamily& f, bool deformed);

// gamma_k: sum over index subsets of size k (2k for SOstar) of products of
// coordinate minors with symbol minors: Pf(z_I) Pf(xi_I) for SOstar and
// det(z^I_J) det(xi^I_J) for Sp/SU, diagonal-doubled xi for Sp. gamma_0 = 1.
// Throws std::out_of_range unless 0 <= k <= rank_r().
Polynomial gamma_k(const PairFamily& f, int k);

// Operator counterpart with d-minors on the right; weyl_symbol(Gamma_k(f,k))
// equals gamma_k(f,k).
WeylOperator Gamma_k(const PairFamily& f, int k);

// The 2n x 2n alternating matrix [[z, u J_n],[-u J_n, -J xi J]] over the
// SOstar variables; its Pfaffian is sum_k u^{n-2k} gamma_k.
PolyMatrix build_phi(int n, const Polynomial& u_val);

// Exact membership tests for the realizations: tX J + J X = 0 with the plain
// antidiagonal J (SOstar) or the split symplectic form (Sp), trace 0 (SU);
// group version tg J g = J, respectively det g = 1 for SU.
bool satisfies_defining_relation(const PairFamily& f, const PolyMatrix& x);
bool satisfies_group_relation(const PairFamily& f, const PolyMatrix& g);

}  // namespace hsp
