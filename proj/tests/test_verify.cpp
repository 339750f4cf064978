#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "hsp/verify.hpp"

using namespace hsp;

namespace {

bool same_modulo_timing(const std::vector<IdentityReport>& a,
                        const std::vector<IdentityReport>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].identity != b[i].identity || a[i].family != b[i].family ||
        a[i].params != b[i].params || a[i].pass != b[i].pass ||
        a[i].witness != b[i].witness)
      return false;
  return true;
}

}  // namespace

TEST_CASE("identity names and aliases") {
  const auto& names = identity_names();
  CHECK(names.size() == 10);
  CHECK(names.front() == "generating-function");
  CHECK(names.back() == "kernel-cross-validation");
  CHECK(canonical_identity("gen-fn") == "generating-function");
  CHECK(canonical_identity("nilpotency") == "nilpotency");
  CHECK(canonical_identity("msf-det") == "minor-summation-determinant");
  CHECK(canonical_identity("kernels") == "kernel-cross-validation");
  CHECK_THROWS_AS(canonical_identity("determinant"), std::invalid_argument);
}

TEST_CASE("conjugation to the nilpotent normal form") {
  for (const PairFamily& f :
       {PairFamily::sostar(2), PairFamily::sp(1), PairFamily::su(1, 1),
        PairFamily::su(2, 1)}) {
    const IdentityReport r = check_nilpotency(f);
    CHECK(r.pass);
    CHECK(r.witness.empty());
    CHECK(r.identity == "nilpotency");
  }
  // The su(1,1) normal form has the weighted scalar part on the diagonal.
  const PolyMatrix rhs = build_nilpotent_rhs(PairFamily::su(1, 1));
  const Polynomial s = Polynomial::variable(var_s());
  CHECK(rhs.at(0, 0) == poly_scale(s, rat(1, 2)));
  CHECK(rhs.at(1, 1) == poly_scale(s, rat(-1, 2)));
  CHECK(rhs.at(1, 0) == poly_neg(Polynomial::variable(var_xi(1, 1))));
  CHECK(rhs.at(0, 1).is_zero());
}

TEST_CASE("conjugation of the deformed matrix") {
  for (const PairFamily& f :
       {PairFamily::sostar(2), PairFamily::sp(2), PairFamily::su(2, 2)})
    CHECK(check_deformed(f).pass);
}

TEST_CASE("generating functions at small rank") {
  for (const PairFamily& f :
       {PairFamily::sostar(1), PairFamily::sostar(3), PairFamily::sp(1),
        PairFamily::sp(2), PairFamily::su(1, 1), PairFamily::su(2, 1)}) {
    const IdentityReport r = check_generating_function(f);
    CHECK(r.pass);
    if (!r.pass) MESSAGE(r.witness);
  }
}

TEST_CASE("phi generating function") {
  for (int n = 1; n <= 3; ++n) CHECK(check_phi_generating_function(n).pass);
  const IdentityReport bad = check_phi_generating_function(9);
  CHECK_FALSE(bad.pass);
  CHECK(bad.witness.find("error:") == 0);
}

TEST_CASE("minor summation formulas") {
  CHECK(check_msf(MsfKind::Pfaffian, 1, 0).pass);
  CHECK(check_msf(MsfKind::Pfaffian, 2, 0).pass);
  CHECK(check_msf(MsfKind::Determinant, 1, 1).pass);
  CHECK(check_msf(MsfKind::Determinant, 2, 1).pass);
  CHECK(check_msf(MsfKind::Determinant, 2, 2).pass);
  // The printed sign convention already fails at the smallest size, with the
  // cross term as witness.
  const IdentityReport printed =
      check_msf(MsfKind::Determinant, 1, 1, DetSignMode::AsPrinted);
  CHECK_FALSE(printed.pass);
  CHECK(printed.witness == "term 2 * z[1,1] * xi[1,1]");
  CHECK(printed.params.at("sign_mode") == 0);
}

TEST_CASE("operator identities at small rank") {
  for (const PairFamily& f :
       {PairFamily::sostar(2), PairFamily::sp(1), PairFamily::su(1, 1)}) {
    CHECK(check_lie_homomorphism(f).pass);
    CHECK(check_invariance(f).pass);
    CHECK(check_symbol_consistency(f).pass);
  }
}

TEST_CASE("kernel cross validation is seed dependent but stable") {
  const IdentityReport a = check_kernels(7);
  CHECK(a.pass);
  CHECK(a.params.at("seed") == 7);
  const IdentityReport b = check_kernels(7);
  CHECK(same_modulo_timing({a}, {b}));
}

TEST_CASE("mutations are caught with a witness") {
  CheckOptions opt;
  opt.mutate = true;
  opt.mutate_row = 1;
  opt.mutate_col = 3;
  const PairFamily f = PairFamily::sostar(2);
  const IdentityReport nil = check_nilpotency(f, opt);
  CHECK_FALSE(nil.pass);
  CHECK(nil.witness.find("entry (1,3)") == 0);
  const IdentityReport def = check_deformed(f, opt);
  CHECK_FALSE(def.pass);
  CHECK_FALSE(def.witness.empty());
  const IdentityReport gen = check_generating_function(f, opt);
  CHECK_FALSE(gen.pass);
  CHECK_FALSE(gen.witness.empty());
  // Determinant families have no skew-symmetry to break, so the generating
  // function check fails there with a polynomial witness.
  opt.mutate_col = 1;
  const IdentityReport diag = check_generating_function(PairFamily::sp(1), opt);
  CHECK_FALSE(diag.pass);
  CHECK(diag.witness.find("direct: term") == 0);
  opt.mutate_row = 99;
  CHECK(check_nilpotency(f, opt).witness.find("error:") == 0);
}

TEST_CASE("suite defaults cover the whole grid") {
  SuiteSelection sel;
  sel.identities = {"nilpotency"};
  const auto reports = run_suite(sel, 1);
  REQUIRE(reports.size() == 13);
  CHECK(reports[0].family == "sostar");
  CHECK(reports[0].params.at("n") == 1);
  CHECK(reports[4].params.at("n") == 5);
  CHECK(reports[5].family == "sp");
  CHECK(reports[8].family == "su");
  CHECK(reports[12].params.at("p") == 3);
  CHECK(reports[12].params.at("q") == 2);
  for (const IdentityReport& r : reports) CHECK(r.pass);
}

TEST_CASE("explicit ranks replace the grid") {
  SuiteSelection sel;
  sel.identities = {"nilpotency"};
  sel.families = {"sp"};
  sel.n = 2;
  const auto reports = run_suite(sel, 1);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].family == "sp");
  CHECK(reports[0].params.at("n") == 2);
}

TEST_CASE("filters exclude inapplicable checks") {
  SuiteSelection sel;
  sel.families = {"sp"};
  sel.n = 1;
  const auto reports = run_suite(sel, 1);
  // Six per-family identities; the family-free checks drop out.
  REQUIRE(reports.size() == 6);
  for (const IdentityReport& r : reports) {
    CHECK(r.family == "sp");
    CHECK(r.pass);
  }
  SuiteSelection pq;
  pq.identities = {"phi", "msf-det"};
  pq.p = 2;
  pq.q = 1;
  const auto dets = run_suite(pq, 1);
  REQUIRE(dets.size() == 1);
  CHECK(dets[0].identity == "minor-summation-determinant");
}

TEST_CASE("cost guards reject oversized explicit ranks") {
  SuiteSelection sel;
  sel.identities = {"nilpotency"};
  sel.families = {"sp"};
  sel.n = 9;
  CHECK_THROWS_AS(run_suite(sel, 1), std::invalid_argument);
  SuiteSelection su;
  su.identities = {"nilpotency"};
  su.families = {"su"};
  su.p = 6;
  su.q = 4;
  CHECK_THROWS_AS(run_suite(su, 1), std::invalid_argument);
  SuiteSelection phi;
  phi.identities = {"phi"};
  phi.n = 7;
  CHECK_THROWS_AS(run_suite(phi, 1), std::invalid_argument);
}

TEST_CASE("parallel execution yields the serial reports") {
  SuiteSelection sel;
  sel.identities = {"nilpotency", "deformed", "symbols", "msf-pf"};
  const auto serial = run_suite(sel, 1);
  const auto parallel = run_suite(sel, 4);
  CHECK(serial.size() == 42);
  CHECK(same_modulo_timing(serial, parallel));
}
