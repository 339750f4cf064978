#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "hsp/families.hpp"

using namespace hsp;

namespace {

Polynomial v(VariableId id) { return Polynomial::variable(id); }

const std::vector<PairFamily> grid{
    PairFamily::sostar(1), PairFamily::sostar(2), PairFamily::sostar(3),
    PairFamily::sp(1),     PairFamily::sp(2),     PairFamily::su(1, 1),
    PairFamily::su(2, 1),  PairFamily::su(2, 2)};

}  // namespace

TEST_CASE("family descriptors") {
  const PairFamily so = PairFamily::sostar(3);
  CHECK(so.N() == 6);
  CHECK(so.rank_r() == 1);
  CHECK(so.dim_g() == 15);
  CHECK(so.var_count() == 3);
  CHECK(so.name() == "sostar");
  const PairFamily sp = PairFamily::sp(3);
  CHECK(sp.N() == 6);
  CHECK(sp.rank_r() == 3);
  CHECK(sp.dim_g() == 21);
  CHECK(sp.var_count() == 6);
  const PairFamily su = PairFamily::su(3, 2);
  CHECK(su.N() == 5);
  CHECK(su.rank_r() == 2);
  CHECK(su.dim_g() == 24);
  CHECK(su.var_count() == 6);
  CHECK(su.name() == "su");
  CHECK_THROWS_AS(PairFamily::sostar(0), std::invalid_argument);
  CHECK_THROWS_AS(PairFamily::su(1, 2), std::invalid_argument);
}

TEST_CASE("basis spans g and satisfies the defining relation") {
  for (const PairFamily& f : grid) {
    const auto basis = build_basis(f);
    CHECK(static_cast<int>(basis.size()) == f.dim_g());
    for (const BasisElement& b : basis) {
      CHECK(b.mat.rows == f.N());
      CHECK(satisfies_defining_relation(f, b.mat));
    }
  }
}

TEST_CASE("basis order and names") {
  const auto so = build_basis(PairFamily::sostar(2));
  CHECK(so[0].name() == "X0[1,1]");
  CHECK(so[3].name() == "X0[2,2]");
  CHECK(so[4].name() == "X+[1,2]");
  CHECK(so[5].name() == "X-[1,2]");
  const auto su = build_basis(PairFamily::su(2, 1));
  CHECK(su[0].name() == "H[1]");
  CHECK(su[1].name() == "H[2]");
  CHECK(su[2].name() == "E+[1,2]");
  CHECK(su[3].name() == "E+[2,1]");
  CHECK(su[4].name() == "X+[1,1]");
  CHECK(su[6].name() == "X-[1,1]");
}

TEST_CASE("unipotent elements lie in the group") {
  for (const PairFamily& f : grid) {
    CHECK(satisfies_group_relation(f, u_of_z(f)));
    CHECK(pm_mul(u_of_z(f), u_of_z_inverse(f)) == pm_identity(f.N()));
  }
}

TEST_CASE("trace form and duality") {
  const PairFamily so = PairFamily::sostar(2);
  const auto so_basis = build_basis(so);
  CHECK(bilinear_form(so, so_basis[0].mat, so_basis[0].mat) == rat(1));
  const PairFamily su = PairFamily::su(1, 1);
  const auto su_basis = build_basis(su);
  const auto su_duals = dual_basis(su);
  CHECK(bilinear_form(su, su_basis[0].mat, su_basis[0].mat) == rat(2));
  // H^dual = H/2 at (p,q) = (1,1).
  CHECK(su_duals[0].mat.at(0, 0).constant_value() == rat(1, 2));
  for (const PairFamily& f : grid) {
    const auto basis = build_basis(f);
    const auto duals = dual_basis(f);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        CHECK(bilinear_form(f, basis[i].mat, duals[j].mat) ==
              (i == j ? rat(1) : rat(0)));
  }
  PolyMatrix bad(2, 2);
  bad.at(0, 0) = v(var_s());
  CHECK_THROWS_AS(bilinear_form(su, bad, bad), std::invalid_argument);
}

TEST_CASE("expansion in the basis inverts linear combinations") {
  for (const PairFamily& f : {PairFamily::sostar(2), PairFamily::su(2, 1)}) {
    const auto basis = build_basis(f);
    const auto duals = dual_basis(f);
    PolyMatrix m(f.N(), f.N());
    std::vector<Rational> want(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      want[i] = rat(static_cast<long>(2 * i + 1), 3);
      m = pm_add(m, pm_scale(basis[i].mat, Polynomial::constant(want[i])));
    }
    CHECK(expand_in_basis(f, duals, m) == want);
  }
}

TEST_CASE("holomorphic model operators, small closed forms") {
  const PairFamily so = PairFamily::sostar(2);
  const auto sob = build_basis(so);
  const Polynomial s = v(var_s()), z12 = v(var_z(1, 2)), d12 = v(var_d(1, 2));
  CHECK(dpi(so, sob[0]).repr() == s - z12 * d12);                      // X0[1,1]
  CHECK(dpi(so, sob[1]).repr().is_zero());                            // X0[1,2]
  CHECK(dpi(so, sob[3]).repr() == s - z12 * d12);                     // X0[2,2]
  CHECK(dpi(so, sob[4]).repr() == poly_neg(d12));                     // X+[1,2]
  CHECK(dpi(so, sob[5]).repr() == z12 * z12 * d12 - poly_scale(s * z12, rat(2)));

  const PairFamily sp = PairFamily::sp(1);
  const auto spb = build_basis(sp);
  const Polynomial z11 = v(var_z(1, 1)), d11 = v(var_d(1, 1));
  CHECK(dpi(sp, spb[0]).repr() == s - poly_scale(z11 * d11, rat(2)));
  CHECK(dpi(sp, spb[1]).repr() == poly_scale(d11, rat(-2)));
  CHECK(dpi(sp, spb[2]).repr() ==
        poly_scale(z11 * z11 * d11, rat(2)) - poly_scale(s * z11, rat(2)));

  const PairFamily su = PairFamily::su(1, 1);
  const auto sub = build_basis(su);
  CHECK(dpi(su, sub[0]).repr() == s - poly_scale(z11 * d11, rat(2)));
  CHECK(dpi(su, sub[1]).repr() == poly_neg(d11));
  CHECK(dpi(su, sub[2]).repr() == z11 * z11 * d11 - s * z11);
}

TEST_CASE("coordinate matrices carry the family structure") {
  const PairFamily so = PairFamily::sostar(3);
  const PolyMatrix zso = z_matrix(so);
  CHECK(is_alternating(zso));
  CHECK(zso.at(0, 1) == v(var_z(1, 2)));
  CHECK(zso.at(1, 0) == poly_neg(v(var_z(1, 2))));

  const PairFamily sp = PairFamily::sp(2);
  const PolyMatrix zsp = z_matrix(sp);
  CHECK(zsp.at(0, 1) == zsp.at(1, 0));
  CHECK(zsp.at(0, 0) == v(var_z(1, 1)));
  // The tilde convention doubles the diagonal of xi and d only.
  CHECK(xi_matrix(sp).at(0, 0) == poly_scale(v(var_xi(1, 1)), rat(2)));
  CHECK(xi_matrix(sp).at(0, 1) == v(var_xi(1, 2)));
  CHECK(d_matrix(sp).at(1, 1) == poly_scale(v(var_d(2, 2)), rat(2)));

  const PairFamily su = PairFamily::su(3, 2);
  CHECK(z_matrix(su).rows == 3);
  CHECK(z_matrix(su).cols == 2);
  CHECK(z_block(su) == z_matrix(su));
  CHECK(z_block(so) == pm_mul(z_matrix(so), j_matrix(3)));
}

TEST_CASE("gamma tower") {
  CHECK(gamma_k(PairFamily::sp(1), 0) == Polynomial::from_int(1));
  CHECK(gamma_k(PairFamily::sp(1), 1) ==
        poly_scale(v(var_z(1, 1)) * v(var_xi(1, 1)), rat(2)));
  CHECK(gamma_k(PairFamily::sostar(2), 1) == v(var_z(1, 2)) * v(var_xi(1, 2)));
  CHECK(gamma_k(PairFamily::su(2, 1), 1) ==
        v(var_z(1, 1)) * v(var_xi(1, 1)) + v(var_z(2, 1)) * v(var_xi(2, 1)));
  CHECK_THROWS_AS(gamma_k(PairFamily::sp(1), 2), std::out_of_range);
  CHECK_THROWS_AS(gamma_k(PairFamily::sp(1), -1), std::out_of_range);
  // Operator counterpart at the smallest rank.
  CHECK(to_string(Gamma_k(PairFamily::sp(1), 1)) == "2 * z[1,1] * d[1,1]");
  for (const PairFamily& f : grid)
    for (int k = 0; k <= f.rank_r(); ++k)
      CHECK(weyl_symbol(Gamma_k(f, k)) == gamma_k(f, k));
}

TEST_CASE("symbol matrix at the smallest interesting rank") {
  const PairFamily so = PairFamily::sostar(2);
  const PolyMatrix st = build_sigma(so, true);
  const Polynomial u = v(var_u()), s = v(var_s()), z12 = v(var_z(1, 2));
  CHECK(st.at(0, 0) == u);
  CHECK(st.at(2, 2) == poly_neg(u));
  CHECK(st.at(0, 2) == poly_neg(z12 * u + z12 * s));
  CHECK(st.at(1, 3) == z12 * u + z12 * s);
  CHECK(st.at(2, 0) == poly_neg(v(var_xi(1, 2))));
  CHECK(st.at(3, 1) == v(var_xi(1, 2)));
  CHECK(st.at(0, 1).is_zero());
  CHECK(st.at(0, 3).is_zero());
  // The plain symbol matrix is the deformed one at u = s - gamma_1.
  const std::map<VariableId, Polynomial> sub{
      {var_u(), s - gamma_k(so, 1)}};
  PolyMatrix specialized(st.rows, st.cols);
  for (int r = 0; r < st.rows; ++r)
    for (int c = 0; c < st.cols; ++c)
      specialized.at(r, c) = poly_substitute(st.at(r, c), sub);
  CHECK(specialized == build_sigma(so, false));
}

TEST_CASE("phi matrix") {
  const Polynomial u = v(var_u());
  const PolyMatrix phi1 = build_phi(1, u);
  CHECK(phi1.at(0, 1) == u);
  CHECK(phi1.at(1, 0) == poly_neg(u));
  CHECK(phi1.at(0, 0).is_zero());
  CHECK(pfaffian_expansion(phi1) == u);
  const PolyMatrix phi2 = build_phi(2, u);
  CHECK(is_alternating(phi2));
  CHECK(pfaffian_expansion(phi2) ==
        u * u + gamma_k(PairFamily::sostar(2), 1));
}
