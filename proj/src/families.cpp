#include "hsp/families.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace hsp {

namespace {

std::uint32_t u32(int v) { return static_cast<std::uint32_t>(v); }

Polynomial pvar(VariableId v) { return Polynomial::variable(v); }

// Signed canonical entries of the variable matrices. SOstar stores i < j and
// alternates; Sp stores i <= j symmetrically, with the derivative/symbol
// diagonal doubled.
Polynomial so_entry(VarKind k, int i, int j) {
  if (i == j) return Polynomial();
  if (i < j) return pvar(make_var(k, u32(i), u32(j)));
  return poly_neg(pvar(make_var(k, u32(j), u32(i))));
}

Polynomial sp_entry(VarKind k, int i, int j) {
  if (i > j) std::swap(i, j);
  return pvar(make_var(k, u32(i), u32(j)));
}

Polynomial sp_tilde_entry(VarKind k, int i, int j) {
  Polynomial e = sp_entry(k, i, j);
  return i == j ? poly_scale(e, rat(2)) : e;
}

// 1-based entry accumulation and the -i := N+1-i index convention.
void add_at(PolyMatrix& m, int r, int c, long v) {
  m.at(r - 1, c - 1) = poly_add(m.at(r - 1, c - 1), Polynomial::from_int(v));
}

int neg_of(int N, int i) { return N + 1 - i; }

int block_rows(const PairFamily& f) { return f.kind == FamilyKind::SU ? f.p : f.n; }
int block_cols(const PairFamily& f) { return f.kind == FamilyKind::SU ? f.q : f.n; }

// Split symplectic form: +1 at (i, -i) for i <= n, -1 below.
PolyMatrix sp_form(int n) {
  PolyMatrix j(2 * n, 2 * n);
  for (int i = 1; i <= 2 * n; ++i)
    j.at(i - 1, 2 * n - i) = Polynomial::from_int(i <= n ? 1 : -1);
  return j;
}

// Unchecked subset-sum form of gamma_k; public gamma_k adds the range check.
// wm supplies the second factor (xi for gamma, d for Gamma).
Polynomial gamma_sum(const PairFamily& f, int k, const PolyMatrix& zm, const PolyMatrix& wm) {
  if (k == 0) return Polynomial::from_int(1);
  Polynomial acc;
  if (f.kind == FamilyKind::SOstar) {
    for (const IndexSubset& I : subsets_of_size(f.n, 2 * k)) {
      Polynomial piece = poly_mul(pfaffian_expansion(submatrix(zm, I, I)),
                                  pfaffian_expansion(submatrix(wm, I, I)));
      acc = poly_add(acc, piece);
    }
    return acc;
  }
  const int rows = block_rows(f), cols = block_cols(f);
  for (const IndexSubset& I : subsets_of_size(rows, k))
    for (const IndexSubset& J : subsets_of_size(cols, k)) {
      Polynomial piece = poly_mul(det_bareiss(submatrix(zm, I, J)),
                                  det_bareiss(submatrix(wm, I, J)));
      acc = poly_add(acc, piece);
    }
  return acc;
}

Polynomial gamma1(const PairFamily& f) {
  return gamma_sum(f, 1, z_matrix(f), xi_matrix(f));
}

// W is the u-direction of the sigma deformation.
PolyMatrix w_matrix(const PairFamily& f) {
  const int a = block_rows(f), b = block_cols(f);
  PolyMatrix w(a + b, a + b);
  for (int i = 0; i < a; ++i) w.at(i, i) = Polynomial::from_int(-1);
  for (int i = 0; i < b; ++i) w.at(a + i, a + i) = Polynomial::from_int(1);
  PolyMatrix zb = z_block(f);
  for (int r = 0; r < a; ++r)
    for (int c = 0; c < b; ++c) w.at(r, a + c) = zb.at(r, c);
  return w;
}

}  // namespace

PairFamily PairFamily::sostar(int n) {
  if (n < 1) throw std::invalid_argument("sostar: n must be >= 1");
  PairFamily f;
  f.kind = FamilyKind::SOstar;
  f.n = n;
  return f;
}

PairFamily PairFamily::sp(int n) {
  if (n < 1) throw std::invalid_argument("sp: n must be >= 1");
  PairFamily f;
  f.kind = FamilyKind::Sp;
  f.n = n;
  return f;
}

PairFamily PairFamily::su(int p, int q) {
  if (q < 1 || p < q) throw std::invalid_argument("su: need p >= q >= 1");
  PairFamily f;
  f.kind = FamilyKind::SU;
  f.p = p;
  f.q = q;
  return f;
}

int PairFamily::N() const { return kind == FamilyKind::SU ? p + q : 2 * n; }

int PairFamily::rank_r() const {
  switch (kind) {
    case FamilyKind::SOstar: return n / 2;
    case FamilyKind::Sp: return n;
    case FamilyKind::SU: return q;
  }
  return 0;
}

int PairFamily::dim_g() const {
  switch (kind) {
    case FamilyKind::SOstar: return 2 * n * n - n;
    case FamilyKind::Sp: return 2 * n * n + n;
    case FamilyKind::SU: return (p + q) * (p + q) - 1;
  }
  return 0;
}

int PairFamily::var_count() const {
  switch (kind) {
    case FamilyKind::SOstar: return n * (n - 1) / 2;
    case FamilyKind::Sp: return n * (n + 1) / 2;
    case FamilyKind::SU: return p * q;
  }
  return 0;
}

std::string PairFamily::name() const {
  switch (kind) {
    case FamilyKind::SOstar: return "sostar";
    case FamilyKind::Sp: return "sp";
    case FamilyKind::SU: return "su";
  }
  return "?";
}

std::string BasisElement::name() const {
  const std::string ij = "[" + std::to_string(i) + "," + std::to_string(j) + "]";
  switch (label) {
    case LabelKind::X0: return "X0" + ij;
    case LabelKind::Xplus: return "X+" + ij;
    case LabelKind::Xminus: return "X-" + ij;
    case LabelKind::H: return "H[" + std::to_string(i) + "]";
    case LabelKind::Eplus: return "E+" + ij;
    case LabelKind::Eminus: return "E-" + ij;
  }
  return "?";
}

std::vector<BasisElement> build_basis(const PairFamily& f) {
  std::vector<BasisElement> out;
  out.reserve(static_cast<std::size_t>(f.dim_g()));
  const int N = f.N();
  auto push = [&](LabelKind l, int i, int j, PolyMatrix m) {
    out.push_back(BasisElement{l, i, j, std::move(m)});
  };
  switch (f.kind) {
    case FamilyKind::SOstar:
    case FamilyKind::Sp: {
      const int n = f.n;
      const bool sp = f.kind == FamilyKind::Sp;
      const long off = sp ? 1 : -1;  // off-diagonal unit sign in X+-
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          PolyMatrix m(N, N);
          add_at(m, i, j, 1);
          add_at(m, neg_of(N, j), neg_of(N, i), -1);
          push(LabelKind::X0, i, j, std::move(m));
        }
      for (int i = 1; i <= n; ++i)
        for (int j = sp ? i : i + 1; j <= n; ++j) {
          PolyMatrix m(N, N);
          add_at(m, i, neg_of(N, j), 1);
          add_at(m, j, neg_of(N, i), off);
          push(LabelKind::Xplus, i, j, std::move(m));
        }
      for (int i = 1; i <= n; ++i)
        for (int j = sp ? i : i + 1; j <= n; ++j) {
          PolyMatrix m(N, N);
          add_at(m, neg_of(N, j), i, 1);
          add_at(m, neg_of(N, i), j, off);
          push(LabelKind::Xminus, i, j, std::move(m));
        }
      break;
    }
    case FamilyKind::SU: {
      const int p = f.p, q = f.q;
      for (int i = 1; i <= p + q - 1; ++i) {
        PolyMatrix m(N, N);
        add_at(m, i, i, 1);
        add_at(m, N, N, -1);
        push(LabelKind::H, i, 0, std::move(m));
      }
      for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= p; ++j)
          if (i != j) {
            PolyMatrix m(N, N);
            add_at(m, i, j, 1);
            push(LabelKind::Eplus, i, j, std::move(m));
          }
      for (int i = 1; i <= q; ++i)
        for (int j = 1; j <= q; ++j)
          if (i != j) {
            PolyMatrix m(N, N);
            add_at(m, p + i, p + j, 1);
            push(LabelKind::Eminus, i, j, std::move(m));
          }
      for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j) {
          PolyMatrix m(N, N);
          add_at(m, i, p + j, 1);
          push(LabelKind::Xplus, i, j, std::move(m));
        }
      for (int i = 1; i <= p; ++i)
        for (int j = 1; j <= q; ++j) {
          PolyMatrix m(N, N);
          add_at(m, p + j, i, 1);
          push(LabelKind::Xminus, i, j, std::move(m));
        }
      break;
    }
  }
  return out;
}

Rational bilinear_form(const PairFamily& f, const PolyMatrix& X, const PolyMatrix& Y) {
  const int N = f.N();
  if (X.rows != N || X.cols != N || Y.rows != N || Y.cols != N)
    throw std::invalid_argument("bilinear_form: size mismatch");
  Polynomial tr;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) tr = poly_add(tr, poly_mul(X.at(r, c), Y.at(c, r)));
  if (tr.is_zero()) return Rational(0);
  if (!tr.is_constant())
    throw std::invalid_argument("bilinear_form: nonconstant entries");
  Rational v = tr.constant_value();
  if (f.kind != FamilyKind::SU) v /= 2;
  return v;
}

std::vector<std::vector<Rational>> dual_coefficients(const PairFamily& f) {
  const auto basis = build_basis(f);
  const int d = static_cast<int>(basis.size());
  std::vector<std::vector<Rational>> g(d, std::vector<Rational>(2 * d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j)
      g[i][j] = bilinear_form(f, basis[i].mat, basis[j].mat);
    g[i][d + i] = 1;
  }
  // Gauss-Jordan on [G | I]; B is nondegenerate, so a zero column is a bug.
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int r = col; r < d; ++r)
      if (!rat_is_zero(g[r][col])) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::runtime_error("dual_coefficients: singular Gram matrix");
    std::swap(g[col], g[pivot]);
    const Rational inv = 1 / g[col][col];
    for (int c = 0; c < 2 * d; ++c) g[col][c] *= inv;
    for (int r = 0; r < d; ++r) {
      if (r == col || rat_is_zero(g[r][col])) continue;
      const Rational factor = g[r][col];
      for (int c = 0; c < 2 * d; ++c) g[r][c] -= factor * g[col][c];
    }
  }
  std::vector<std::vector<Rational>> inv(d, std::vector<Rational>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inv[i][j] = g[i][d + j];
  return inv;
}

std::vector<BasisElement> dual_basis(const PairFamily& f) {
  const auto basis = build_basis(f);
  const auto inv = dual_coefficients(f);
  const int d = static_cast<int>(basis.size()), N = f.N();
  std::vector<BasisElement> out;
  out.reserve(basis.size());
  for (int j = 0; j < d; ++j) {
    PolyMatrix m(N, N);
    for (int i = 0; i < d; ++i) {
      if (rat_is_zero(inv[i][j])) continue;
      m = pm_add(m, pm_scale(basis[i].mat, Polynomial::constant(inv[i][j])));
    }
    out.push_back(BasisElement{basis[j].label, basis[j].i, basis[j].j, std::move(m)});
  }
  return out;
}

std::vector<Rational> expand_in_basis(const PairFamily& f,
                                      const std::vector<BasisElement>& duals,
                                      const PolyMatrix& m) {
  std::vector<Rational> coords;
  coords.reserve(duals.size());
  for (const BasisElement& dual : duals) coords.push_back(bilinear_form(f, m, dual.mat));
  return coords;
}

WeylOperator dpi(const PairFamily& f, const BasisElement& b) {
  const Polynomial s = pvar(var_s());
  const int i = b.i, j = b.j;
  switch (f.kind) {
    case FamilyKind::SOstar: {
      const int n = f.n;
      switch (b.label) {
        case LabelKind::X0: {
          Polynomial r = i == j ? s : Polynomial();
          for (int k = 1; k <= n; ++k)
            r = poly_sub(r, poly_mul(so_entry(VarKind::Z, k, j), so_entry(VarKind::D, k, i)));
          return WeylOperator::from_polynomial(r);
        }
        case LabelKind::Xplus:
          return WeylOperator::from_polynomial(poly_neg(pvar(var_d(u32(i), u32(j)))));
        case LabelKind::Xminus: {
          Polynomial r = poly_scale(poly_mul(s, pvar(var_z(u32(i), u32(j)))), rat(-2));
          for (int k = 1; k <= n; ++k)
            for (int l = k + 1; l <= n; ++l) {
              Polynomial c =
                  poly_sub(poly_mul(so_entry(VarKind::Z, k, i), so_entry(VarKind::Z, j, l)),
                           poly_mul(so_entry(VarKind::Z, k, j), so_entry(VarKind::Z, i, l)));
              r = poly_sub(r, poly_mul(c, pvar(var_d(u32(k), u32(l)))));
            }
          return WeylOperator::from_polynomial(r);
        }
        default: break;
      }
      break;
    }
    case FamilyKind::Sp: {
      const int n = f.n;
      switch (b.label) {
        case LabelKind::X0: {
          Polynomial r = i == j ? s : Polynomial();
          for (int k = 1; k <= n; ++k)
            r = poly_sub(r, poly_mul(sp_entry(VarKind::Z, j, k), sp_tilde_entry(VarKind::D, i, k)));
          return WeylOperator::from_polynomial(r);
        }
        case LabelKind::Xplus:
          return WeylOperator::from_polynomial(poly_neg(sp_tilde_entry(VarKind::D, i, j)));
        case LabelKind::Xminus: {
          Polynomial r = poly_scale(poly_mul(s, sp_entry(VarKind::Z, i, j)), rat(-2));
          for (int k = 1; k <= n; ++k)
            for (int l = 1; l <= n; ++l) {
              Polynomial c = poly_mul(sp_entry(VarKind::Z, k, i), sp_entry(VarKind::Z, j, l));
              r = poly_add(r, poly_mul(c, sp_tilde_entry(VarKind::D, k, l)));
            }
          return WeylOperator::from_polynomial(r);
        }
        default: break;
      }
      break;
    }
    case FamilyKind::SU: {
      const int p = f.p, q = f.q;
      auto zd = [](int a, int bb, int c, int dd) {
        return poly_mul(pvar(var_z(u32(a), u32(bb))), pvar(var_d(u32(c), u32(dd))));
      };
      switch (b.label) {
        case LabelKind::H: {
          Polynomial r;
          if (i <= p) {
            r = s;
            for (int l = 1; l <= q; ++l) r = poly_sub(r, zd(i, l, i, l));
            for (int k = 1; k <= p; ++k) r = poly_sub(r, zd(k, q, k, q));
          } else {
            const int jj = i - p;  // in [q-1]
            for (int k = 1; k <= p; ++k) {
              r = poly_add(r, zd(k, jj, k, jj));
              r = poly_sub(r, zd(k, q, k, q));
            }
          }
          return WeylOperator::from_polynomial(r);
        }
        case LabelKind::Eplus: {
          Polynomial r;
          for (int l = 1; l <= q; ++l) r = poly_sub(r, zd(j, l, i, l));
          return WeylOperator::from_polynomial(r);
        }
        case LabelKind::Eminus: {
          Polynomial r;
          for (int k = 1; k <= p; ++k) r = poly_add(r, zd(k, i, k, j));
          return WeylOperator::from_polynomial(r);
        }
        case LabelKind::Xplus:
          return WeylOperator::from_polynomial(poly_neg(pvar(var_d(u32(i), u32(j)))));
        case LabelKind::Xminus: {
          Polynomial r = poly_neg(poly_mul(s, pvar(var_z(u32(i), u32(j)))));
          for (int k = 1; k <= p; ++k)
            for (int l = 1; l <= q; ++l)
              r = poly_add(r, poly_mul(pvar(var_z(u32(k), u32(j))),
                                       poly_mul(pvar(var_z(u32(i), u32(l))),
                                                pvar(var_d(u32(k), u32(l))))));
          return WeylOperator::from_polynomial(r);
        }
        default: break;
      }
      break;
    }
  }
  throw std::invalid_argument("dpi: label " + b.name() + " not in family " + f.name());
}

namespace {

PolyMatrix variable_matrix(const PairFamily& f, VarKind k) {
  if (f.kind == FamilyKind::SU) {
    PolyMatrix m(f.p, f.q);
    for (int i = 1; i <= f.p; ++i)
      for (int j = 1; j <= f.q; ++j) m.at(i - 1, j - 1) = pvar(make_var(k, u32(i), u32(j)));
    return m;
  }
  PolyMatrix m(f.n, f.n);
  for (int i = 1; i <= f.n; ++i)
    for (int j = 1; j <= f.n; ++j) {
      if (f.kind == FamilyKind::SOstar)
        m.at(i - 1, j - 1) = so_entry(k, i, j);
      else
        m.at(i - 1, j - 1) = k == VarKind::Z ? sp_entry(k, i, j) : sp_tilde_entry(k, i, j);
    }
  return m;
}

}  // namespace

PolyMatrix z_matrix(const PairFamily& f) { return variable_matrix(f, VarKind::Z); }
PolyMatrix xi_matrix(const PairFamily& f) { return variable_matrix(f, VarKind::XI); }
PolyMatrix d_matrix(const PairFamily& f) { return variable_matrix(f, VarKind::D); }

PolyMatrix z_block(const PairFamily& f) {
  PolyMatrix z = z_matrix(f);
  if (f.kind == FamilyKind::SU) return z;
  return pm_mul(z, j_matrix(f.n));
}

namespace {

PolyMatrix unipotent(const PairFamily& f, bool inverse) {
  const int a = block_rows(f), b = block_cols(f);
  PolyMatrix u = pm_identity(a + b);
  PolyMatrix zb = z_block(f);
  for (int r = 0; r < a; ++r)
    for (int c = 0; c < b; ++c)
      u.at(r, a + c) = inverse ? poly_neg(zb.at(r, c)) : zb.at(r, c);
  return u;
}

}  // namespace

PolyMatrix u_of_z(const PairFamily& f) { return unipotent(f, false); }
PolyMatrix u_of_z_inverse(const PairFamily& f) { return unipotent(f, true); }

PolyMatrix conjugate_sigma(const PairFamily& f, const PolyMatrix& m) {
  if (m.rows != f.N() || m.cols != f.N())
    throw std::invalid_argument("conjugate_sigma: size mismatch");
  return pm_mul(pm_mul(u_of_z_inverse(f), m), u_of_z(f));
}

PolyMatrix build_sigma(const PairFamily& f, bool deformed) {
  const auto basis = build_basis(f);
  const auto inv = dual_coefficients(f);
  const int d = static_cast<int>(basis.size()), N = f.N();
  std::vector<WeylOperator> ops;
  ops.reserve(basis.size());
  for (const BasisElement& b : basis) ops.push_back(dpi(f, b));
  PolyMatrix sigma(N, N);
  for (int j = 0; j < d; ++j) {
    WeylOperator dual_op;
    for (int i = 0; i < d; ++i)
      if (!rat_is_zero(inv[i][j])) dual_op = weyl_add(dual_op, weyl_scale(ops[i], inv[i][j]));
    const Polynomial symb = weyl_symbol(dual_op);
    if (symb.is_zero()) continue;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) {
        const Polynomial& e = basis[j].mat.at(r, c);
        if (e.is_zero()) continue;
        sigma.at(r, c) = poly_add(sigma.at(r, c), poly_scale(symb, e.constant_value()));
      }
  }
  if (deformed) {
    const Polynomial tau = poly_sub(poly_sub(pvar(var_s()), pvar(var_u())), gamma1(f));
    sigma = pm_add(sigma, pm_scale(w_matrix(f), tau));
  }
  return sigma;
}

Polynomial gamma_k(const PairFamily& f, int k) {
  if (k < 0 || k > f.rank_r())
    throw std::out_of_range("gamma_k: k out of range for " + f.name());
  return gamma_sum(f, k, z_matrix(f), xi_matrix(f));
}

WeylOperator Gamma_k(const PairFamily& f, int k) {
  if (k < 0 || k > f.rank_r())
    throw std::out_of_range("Gamma_k: k out of range for " + f.name());
  // z-minors times d-minors is already in normal form.
  return WeylOperator::from_polynomial(gamma_sum(f, k, z_matrix(f), d_matrix(f)));
}

PolyMatrix build_phi(int n, const Polynomial& u_val) {
  if (n < 1) throw std::invalid_argument("build_phi: n must be >= 1");
  PolyMatrix phi(2 * n, 2 * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      phi.at(i - 1, j - 1) = so_entry(VarKind::Z, i, j);
      phi.at(n + i - 1, n + j - 1) = poly_neg(so_entry(VarKind::XI, n + 1 - i, n + 1 - j));
    }
  for (int i = 1; i <= n; ++i) {
    phi.at(i - 1, 2 * n - i) = u_val;
    phi.at(n + i - 1, n - i) = poly_neg(u_val);
  }
  return phi;
}

bool satisfies_defining_relation(const PairFamily& f, const PolyMatrix& x) {
  const int N = f.N();
  if (x.rows != N || x.cols != N) return false;
  switch (f.kind) {
    case FamilyKind::SOstar:
    case FamilyKind::Sp: {
      const PolyMatrix j = f.kind == FamilyKind::SOstar ? j_matrix(N) : sp_form(f.n);
      return pm_is_zero(pm_add(pm_mul(pm_transpose(x), j), pm_mul(j, x)));
    }
    case FamilyKind::SU: {
      Polynomial tr;
      for (int i = 0; i < N; ++i) tr = poly_add(tr, x.at(i, i));
      return tr.is_zero();
    }
  }
  return false;
}

bool satisfies_group_relation(const PairFamily& f, const PolyMatrix& g) {
  const int N = f.N();
  if (g.rows != N || g.cols != N) return false;
  switch (f.kind) {
    case FamilyKind::SOstar:
    case FamilyKind::Sp: {
      const PolyMatrix j = f.kind == FamilyKind::SOstar ? j_matrix(N) : sp_form(f.n);
      return pm_mul(pm_mul(pm_transpose(g), j), g) == j;
    }
    case FamilyKind::SU:
      return det_bareiss(g) == Polynomial::from_int(1);
  }
  return false;
}

}  // namespace hsp
