#include "hsp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

namespace hsp {

namespace {

std::uint32_t u32(int v) { return static_cast<std::uint32_t>(v); }

Polynomial pvar(VariableId v) { return Polynomial::variable(v); }

// gamma_1 with the degenerate sostar n=1 case (empty subset sum) folded in.
Polynomial gamma1_of(const PairFamily& f) {
  return f.rank_r() >= 1 ? gamma_k(f, 1) : Polynomial();
}

std::string truncated(std::string s) {
  if (s.size() > 300) {
    s.resize(300);
    s += " ...";
  }
  return s;
}

// Least differing term in canonical order, sign normalized.
std::string term_witness(const Polynomial& diff) {
  const Term& t = diff.terms().back();
  const Rational c = t.coeff < 0 ? Rational(-t.coeff) : t.coeff;
  return "term " + to_string(Polynomial::term(c, t.mono));
}

// First differing entry in row-major order.
bool matrix_witness(const PolyMatrix& lhs, const PolyMatrix& rhs, std::string& w) {
  for (int r = 0; r < lhs.rows; ++r)
    for (int c = 0; c < lhs.cols; ++c) {
      const Polynomial d = poly_sub(lhs.at(r, c), rhs.at(r, c));
      if (!d.is_zero()) {
        w = "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
            "): " + truncated(to_string(d));
        return false;
      }
    }
  return true;
}

void apply_mutation(PolyMatrix& m, const CheckOptions& opt) {
  if (!opt.mutate) return;
  if (opt.mutate_row < 1 || opt.mutate_row > m.rows || opt.mutate_col < 1 ||
      opt.mutate_col > m.cols)
    throw std::invalid_argument("mutation position out of range");
  Polynomial& e = m.at(opt.mutate_row - 1, opt.mutate_col - 1);
  e = poly_neg(e);
}

std::map<std::string, int> rank_params(const PairFamily& f) {
  if (f.kind == FamilyKind::SU) return {{"p", f.p}, {"q", f.q}};
  return {{"n", f.n}};
}

template <typename Body>
IdentityReport timed_report(std::string identity, std::string family,
                            std::map<std::string, int> params, Body&& body) {
  IdentityReport rep;
  rep.identity = std::move(identity);
  rep.family = std::move(family);
  rep.params = std::move(params);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    rep.pass = body(rep.witness);
  } catch (const std::exception& e) {
    rep.pass = false;
    rep.witness = std::string("error: ") + e.what();
  }
  rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  if (rep.pass) rep.witness.clear();
  return rep;
}

// The -sum xi_{i,j} X-_{i,j} part shared by both conjugation theorems.
void add_xi_lower(const PairFamily& f, PolyMatrix& rhs) {
  for (const BasisElement& b : build_basis(f)) {
    if (b.label != LabelKind::Xminus) continue;
    const Polynomial minus_xi = poly_neg(pvar(var_xi(u32(b.i), u32(b.j))));
    for (int r = 0; r < rhs.rows; ++r)
      for (int c = 0; c < rhs.cols; ++c) {
        const Polynomial& e = b.mat.at(r, c);
        if (e.is_zero()) continue;
        rhs.at(r, c) = poly_add(rhs.at(r, c), poly_scale(minus_xi, e.constant_value()));
      }
  }
}

}  // namespace

PolyMatrix build_nilpotent_rhs(const PairFamily& f) {
  const int N = f.N();
  PolyMatrix rhs(N, N);
  const Polynomial s = pvar(var_s());
  if (f.kind == FamilyKind::SU) {
    for (int i = 0; i < f.p; ++i) rhs.at(i, i) = poly_scale(s, rat(f.q, f.p + f.q));
    for (int i = 0; i < f.q; ++i)
      rhs.at(f.p + i, f.p + i) = poly_scale(s, rat(-f.p, f.p + f.q));
  } else {
    for (int i = 0; i < f.n; ++i) {
      rhs.at(i, i) = s;
      rhs.at(f.n + i, f.n + i) = poly_neg(s);
    }
  }
  add_xi_lower(f, rhs);
  return rhs;
}

PolyMatrix build_deformed_rhs(const PairFamily& f) {
  const int a = f.kind == FamilyKind::SU ? f.p : f.n;
  const int b = f.kind == FamilyKind::SU ? f.q : f.n;
  PolyMatrix rhs(a + b, a + b);
  const Polynomial s = pvar(var_s());
  const Polynomial upg = poly_add(pvar(var_u()), gamma1_of(f));
  const Polynomial tau = poly_sub(s, upg);
  if (f.kind == FamilyKind::SU) {
    const Polynomial up = poly_sub(upg, poly_scale(s, rat(f.p, f.p + f.q)));
    const Polynomial vp = poly_sub(upg, poly_scale(s, rat(f.q, f.p + f.q)));
    for (int i = 0; i < a; ++i) rhs.at(i, i) = up;
    for (int i = 0; i < b; ++i) rhs.at(a + i, a + i) = poly_neg(vp);
  } else {
    for (int i = 0; i < a; ++i) {
      rhs.at(i, i) = upg;
      rhs.at(a + i, a + i) = poly_neg(upg);
    }
  }
  const PolyMatrix zb = z_block(f);
  const Polynomial neg_tau = poly_neg(tau);
  for (int r = 0; r < a; ++r)
    for (int c = 0; c < b; ++c) rhs.at(r, a + c) = poly_mul(neg_tau, zb.at(r, c));
  add_xi_lower(f, rhs);
  return rhs;
}

Polynomial generating_function_rhs(const PairFamily& f) {
  const Polynomial s = pvar(var_s());
  const Polynomial upg = poly_add(pvar(var_u()), gamma1_of(f));
  const Polynomial tau = poly_sub(s, upg);
  Polynomial rhs;
  switch (f.kind) {
    case FamilyKind::SOstar:
      for (int k = 0; 2 * k <= f.n; ++k)
        rhs = poly_add(rhs, poly_mul(poly_mul(poly_pow(upg, u32(f.n - 2 * k)),
                                              poly_pow(tau, u32(k))),
                                     gamma_k(f, k)));
      return rhs;
    case FamilyKind::Sp:
      for (int k = 0; k <= f.n; ++k)
        rhs = poly_add(rhs, poly_mul(poly_mul(poly_pow(upg, u32(2 * (f.n - k))),
                                              poly_pow(tau, u32(k))),
                                     gamma_k(f, k)));
      return f.n % 2 ? poly_neg(rhs) : rhs;
    case FamilyKind::SU: {
      const Polynomial up = poly_sub(upg, poly_scale(s, rat(f.p, f.p + f.q)));
      const Polynomial vp = poly_sub(upg, poly_scale(s, rat(f.q, f.p + f.q)));
      for (int k = 0; k <= f.q; ++k)
        rhs = poly_add(
            rhs, poly_mul(poly_mul(poly_mul(poly_pow(up, u32(f.p - k)),
                                            poly_pow(vp, u32(f.q - k))),
                                   poly_pow(tau, u32(k))),
                          gamma_k(f, k)));
      return f.q % 2 ? poly_neg(rhs) : rhs;
    }
  }
  return rhs;
}

IdentityReport check_nilpotency(const PairFamily& f, const CheckOptions& opt) {
  return timed_report("nilpotency", f.name(), rank_params(f), [&](std::string& w) {
    PolyMatrix sigma = build_sigma(f, false);
    apply_mutation(sigma, opt);
    return matrix_witness(conjugate_sigma(f, sigma), build_nilpotent_rhs(f), w);
  });
}

IdentityReport check_deformed(const PairFamily& f, const CheckOptions& opt) {
  return timed_report("deformed-conjugation", f.name(), rank_params(f), [&](std::string& w) {
    PolyMatrix st = build_sigma(f, true);
    apply_mutation(st, opt);
    return matrix_witness(conjugate_sigma(f, st), build_deformed_rhs(f), w);
  });
}

IdentityReport check_generating_function(const PairFamily& f, const CheckOptions& opt) {
  return timed_report("generating-function", f.name(), rank_params(f), [&](std::string& w) {
    PolyMatrix st = build_sigma(f, true);
    apply_mutation(st, opt);
    const Polynomial rhs = generating_function_rhs(f);
    const bool so = f.kind == FamilyKind::SOstar;
    const Polynomial direct = so ? pf_antidiag(st) : det_expansion(st);
    Polynomial d = poly_sub(direct, rhs);
    if (!d.is_zero()) {
      w = "direct: " + term_witness(d);
      return false;
    }
    const PolyMatrix conj = conjugate_sigma(f, st);
    const Polynomial conjugated = so ? pf_antidiag(conj) : det_expansion(conj);
    d = poly_sub(conjugated, rhs);
    if (!d.is_zero()) {
      w = "conjugated: " + term_witness(d);
      return false;
    }
    // Independent backend on the same input where it is cheap.
    if (so && f.N() <= 6) {
      if (pfaffian_matchings(pm_mul(st, j_matrix(f.N()))) != direct) {
        w = "backend mismatch: pfaffian matchings oracle";
        return false;
      }
    } else if (!so && f.N() <= 4) {
      if (det_bareiss(st) != direct) {
        w = "backend mismatch: det_bareiss";
        return false;
      }
    }
    return true;
  });
}

IdentityReport check_phi_generating_function(int n) {
  return timed_report("phi-generating-function", "-", {{"n", n}}, [&](std::string& w) {
    if (n < 1 || n > 6) throw std::invalid_argument("phi: need 1 <= n <= 6");
    const PairFamily f = PairFamily::sostar(n);
    const Polynomial u = pvar(var_u());
    const PolyMatrix phi = build_phi(n, u);
    const Polynomial lhs = pfaffian_expansion(phi);
    Polynomial rhs;
    for (int k = 0; 2 * k <= n; ++k)
      rhs = poly_add(rhs, poly_mul(poly_pow(u, u32(n - 2 * k)), gamma_k(f, k)));
    const Polynomial d = poly_sub(lhs, rhs);
    if (!d.is_zero()) {
      w = term_witness(d);
      return false;
    }
    if (2 * n <= 6 && pfaffian_matchings(phi) != lhs) {
      w = "backend mismatch: pfaffian matchings oracle";
      return false;
    }
    return true;
  });
}

namespace {

// Fully generic antidiagonal-alternating 2n x 2n matrix: a-block of free
// variables, alternating b/c data, d forced to -J a^T J. The z pool carries
// the a entries; xi[i,j] and xi[10+i,10+j] carry the two alternating blocks.
PolyMatrix generic_antidiag_alternating(int n) {
  PolyMatrix a(n, n), bt(n, n), ct(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) a.at(i - 1, j - 1) = pvar(var_z(u32(i), u32(j)));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      bt.at(i - 1, j - 1) = pvar(var_xi(u32(i), u32(j)));
      bt.at(j - 1, i - 1) = poly_neg(bt.at(i - 1, j - 1));
      ct.at(i - 1, j - 1) = pvar(var_xi(u32(10 + i), u32(10 + j)));
      ct.at(j - 1, i - 1) = poly_neg(ct.at(i - 1, j - 1));
    }
  const PolyMatrix j = j_matrix(n);
  const PolyMatrix b = pm_mul(bt, j);
  const PolyMatrix c = pm_neg(pm_mul(j, ct));
  const PolyMatrix d = pm_neg(pm_mul(pm_mul(j, pm_transpose(a)), j));
  PolyMatrix m(2 * n, 2 * n);
  for (int r = 0; r < n; ++r)
    for (int cc = 0; cc < n; ++cc) {
      m.at(r, cc) = a.at(r, cc);
      m.at(r, n + cc) = b.at(r, cc);
      m.at(n + r, cc) = c.at(r, cc);
      m.at(n + r, n + cc) = d.at(r, cc);
    }
  return m;
}

}  // namespace

IdentityReport check_msf(MsfKind kind, int a, int b, DetSignMode mode) {
  if (kind == MsfKind::Pfaffian) {
    return timed_report("minor-summation-pfaffian", "-", {{"n", a}}, [&](std::string& w) {
      const PolyMatrix m = generic_antidiag_alternating(a);
      const Polynomial d = poly_sub(pf_antidiag(m), msf_pf_rhs(m, a));
      if (!d.is_zero()) {
        w = term_witness(d);
        return false;
      }
      return true;
    });
  }
  return timed_report("minor-summation-determinant", "-",
                      {{"p", a}, {"q", b}, {"sign_mode", static_cast<int>(mode)}},
                      [&](std::string& w) {
                        const int p = a, q = b;
                        PolyMatrix bb(p, q), cc(q, p);
                        for (int i = 1; i <= p; ++i)
                          for (int j = 1; j <= q; ++j) {
                            bb.at(i - 1, j - 1) = pvar(var_z(u32(i), u32(j)));
                            cc.at(j - 1, i - 1) = pvar(var_xi(u32(i), u32(j)));
                          }
                        const Polynomial u = pvar(var_u()), v = pvar(var_s());
                        PolyMatrix m(p + q, p + q);
                        for (int i = 0; i < p; ++i) m.at(i, i) = u;
                        for (int j = 0; j < q; ++j) m.at(p + j, p + j) = v;
                        for (int i = 0; i < p; ++i)
                          for (int j = 0; j < q; ++j) {
                            m.at(i, p + j) = bb.at(i, j);
                            m.at(p + j, i) = cc.at(j, i);
                          }
                        const Polynomial d =
                            poly_sub(det_expansion(m), msf_det_rhs(bb, cc, u, v, mode));
                        if (!d.is_zero()) {
                          w = term_witness(d);
                          return false;
                        }
                        return true;
                      });
}

IdentityReport check_lie_homomorphism(const PairFamily& f) {
  return timed_report("lie-homomorphism", f.name(), rank_params(f), [&](std::string& w) {
    const auto basis = build_basis(f);
    const auto duals = dual_basis(f);
    std::vector<WeylOperator> ops;
    ops.reserve(basis.size());
    for (const BasisElement& b : basis) ops.push_back(dpi(f, b));
    for (std::size_t x = 0; x < basis.size(); ++x)
      for (std::size_t y = 0; y < basis.size(); ++y) {
        const PolyMatrix br = pm_sub(pm_mul(basis[x].mat, basis[y].mat),
                                     pm_mul(basis[y].mat, basis[x].mat));
        const auto coords = expand_in_basis(f, duals, br);
        PolyMatrix recon(f.N(), f.N());
        WeylOperator rhs;
        for (std::size_t m = 0; m < basis.size(); ++m) {
          if (rat_is_zero(coords[m])) continue;
          recon = pm_add(recon, pm_scale(basis[m].mat, Polynomial::constant(coords[m])));
          rhs = weyl_add(rhs, weyl_scale(ops[m], coords[m]));
        }
        const std::string pair = "(" + basis[x].name() + ", " + basis[y].name() + ")";
        if (!(recon == br)) {
          w = "bracket " + pair + " leaves the basis span";
          return false;
        }
        const WeylOperator lhs = weyl_commutator(ops[x], ops[y]);
        if (lhs != rhs) {
          w = "pair " + pair + ": " + term_witness(poly_sub(lhs.repr(), rhs.repr()));
          return false;
        }
      }
    return true;
  });
}

IdentityReport check_invariance(const PairFamily& f) {
  return timed_report("invariance", f.name(), rank_params(f), [&](std::string& w) {
    const auto basis = build_basis(f);
    const std::map<VariableId, Polynomial> s0{{var_s(), Polynomial()}};
    std::vector<WeylOperator> gammas;
    for (int k = 0; k <= f.rank_r(); ++k) gammas.push_back(Gamma_k(f, k));
    for (const BasisElement& b : basis) {
      const bool k_part =
          f.kind == FamilyKind::SU
              ? (b.label == LabelKind::H || b.label == LabelKind::Eplus ||
                 b.label == LabelKind::Eminus)
              : b.label == LabelKind::X0;
      if (!k_part) continue;
      const WeylOperator op0 =
          WeylOperator::from_polynomial(poly_substitute(dpi(f, b).repr(), s0));
      for (int k = 0; k <= f.rank_r(); ++k) {
        const WeylOperator comm = weyl_commutator(op0, gammas[u32(k)]);
        if (!comm.is_zero()) {
          w = "[" + b.name() + " at s=0, Gamma_" + std::to_string(k) +
              "]: " + term_witness(comm.repr());
          return false;
        }
      }
    }
    return true;
  });
}

IdentityReport check_symbol_consistency(const PairFamily& f) {
  return timed_report("symbol-consistency", f.name(), rank_params(f), [&](std::string& w) {
    for (int k = 0; k <= f.rank_r(); ++k) {
      const Polynomial d = poly_sub(weyl_symbol(Gamma_k(f, k)), gamma_k(f, k));
      if (!d.is_zero()) {
        w = "Gamma_" + std::to_string(k) + " symbol: " + term_witness(d);
        return false;
      }
    }
    const std::map<VariableId, Polynomial> sub{
        {var_u(), poly_sub(pvar(var_s()), gamma1_of(f))}};
    const PolyMatrix st = build_sigma(f, true);
    PolyMatrix specialized(st.rows, st.cols);
    for (int r = 0; r < st.rows; ++r)
      for (int c = 0; c < st.cols; ++c)
        specialized.at(r, c) = poly_substitute(st.at(r, c), sub);
    std::string mw;
    if (!matrix_witness(specialized, build_sigma(f, false), mw)) {
      w = "specialization " + mw;
      return false;
    }
    return true;
  });
}

IdentityReport check_kernels(std::uint64_t seed) {
  return timed_report("kernel-cross-validation", "-",
                      {{"seed", static_cast<int>(seed)}}, [&](std::string& w) {
    std::mt19937_64 rng(seed);
    const std::vector<VariableId> pool{var_z(1, 1), var_z(1, 2), var_xi(1, 1), var_s()};
    auto rand_poly = [&](int max_terms) {
      std::uniform_int_distribution<int> nterms(0, max_terms);
      std::uniform_int_distribution<int> coeff(-3, 3);
      std::uniform_int_distribution<int> degree(0, 2);
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      std::vector<Term> terms;
      const int t = nterms(rng);
      for (int i = 0; i < t; ++i) {
        int c = coeff(rng);
        if (c == 0) c = 1;
        std::map<VariableId, std::uint32_t> exps;
        const int d = degree(rng);
        for (int e = 0; e < d; ++e) ++exps[pool[pick(rng)]];
        Monomial m;
        for (const auto& [v, e] : exps) m.vars.emplace_back(v, e);
        terms.push_back(Term{std::move(m), rat(c)});
      }
      return Polynomial::from_terms(std::move(terms));
    };
    const auto tag = [](const char* kind, int inst, int size) {
      return std::string(kind) + " instance " + std::to_string(inst) + " (size " +
             std::to_string(size) + "): ";
    };
    for (int inst = 0; inst < 100; ++inst) {
      const int size = 2 * (1 + inst % 4);
      PolyMatrix m(size, size);
      const int max_terms = size >= 8 ? 1 : 2;
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j) {
          m.at(i, j) = rand_poly(max_terms);
          m.at(j, i) = poly_neg(m.at(i, j));
        }
      const Polynomial pe = pfaffian_expansion(m);
      if (pe != pfaffian_matchings(m)) {
        w = tag("pfaffian", inst, size) + "expansion vs matchings";
        return false;
      }
      const Polynomial det = det_bareiss(m);
      if (poly_mul(pe, pe) != det) {
        w = tag("pfaffian", inst, size) + "Pf^2 vs det";
        return false;
      }
      if (det_expansion(m) != det) {
        w = tag("pfaffian", inst, size) + "det expansion vs bareiss";
        return false;
      }
    }
    for (int inst = 0; inst < 100; ++inst) {
      const int size = 1 + inst % 6;
      PolyMatrix m(size, size);
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) m.at(i, j) = rand_poly(2);
      const Polynomial a = det_leibniz(m);
      if (det_bareiss(m) != a) {
        w = tag("det", inst, size) + "bareiss vs leibniz";
        return false;
      }
      if (det_expansion(m) != a) {
        w = tag("det", inst, size) + "expansion vs leibniz";
        return false;
      }
    }
    return true;
  });
}

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names{
      "generating-function",       "nilpotency",
      "deformed-conjugation",      "phi-generating-function",
      "minor-summation-pfaffian",  "minor-summation-determinant",
      "lie-homomorphism",          "invariance",
      "symbol-consistency",        "kernel-cross-validation"};
  return names;
}

std::string canonical_identity(const std::string& name_or_alias) {
  for (const std::string& n : identity_names())
    if (n == name_or_alias) return n;
  static const std::map<std::string, std::string> alias{
      {"gen-fn", "generating-function"},
      {"deformed", "deformed-conjugation"},
      {"phi", "phi-generating-function"},
      {"msf-pf", "minor-summation-pfaffian"},
      {"msf-det", "minor-summation-determinant"},
      {"lie-hom", "lie-homomorphism"},
      {"symbols", "symbol-consistency"},
      {"kernels", "kernel-cross-validation"}};
  const auto it = alias.find(name_or_alias);
  if (it == alias.end())
    throw std::invalid_argument("unknown identity: " + name_or_alias);
  return it->second;
}

namespace {

// Families selected by the filters, drawing ranks from the default grid
// unless explicit values replace them. Cost guards apply to explicit values.
std::vector<PairFamily> family_grid(const SuiteSelection& sel) {
  std::vector<PairFamily> fams;
  const auto want = [&](const char* fam) {
    return sel.families.empty() ||
           std::find(sel.families.begin(), sel.families.end(), fam) != sel.families.end();
  };
  const bool rank_n = sel.n.has_value();
  const bool rank_pq = sel.p.has_value() || sel.q.has_value();
  if (want("sostar") && !rank_pq) {
    if (rank_n) {
      if (*sel.n > 6 && !sel.unsafe)
        throw std::invalid_argument("cost guard: sostar needs n <= 6 (unsafe overrides)");
      fams.push_back(PairFamily::sostar(*sel.n));
    } else {
      for (int n = 1; n <= 5; ++n) fams.push_back(PairFamily::sostar(n));
    }
  }
  if (want("sp") && !rank_pq) {
    if (rank_n) {
      if (*sel.n > 4 && !sel.unsafe)
        throw std::invalid_argument("cost guard: sp needs n <= 4 (unsafe overrides)");
      fams.push_back(PairFamily::sp(*sel.n));
    } else {
      for (int n = 1; n <= 3; ++n) fams.push_back(PairFamily::sp(n));
    }
  }
  if (want("su") && !rank_n) {
    if (rank_pq) {
      if (!sel.p.has_value() || !sel.q.has_value())
        throw std::invalid_argument("su selection needs both p and q");
      if (*sel.p + *sel.q > 7 && !sel.unsafe)
        throw std::invalid_argument("cost guard: su needs p+q <= 7 (unsafe overrides)");
      fams.push_back(PairFamily::su(*sel.p, *sel.q));
    } else {
      for (auto [p, q] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}})
        fams.push_back(PairFamily::su(p, q));
    }
  }
  return fams;
}

}  // namespace

std::vector<IdentityReport> run_suite(const SuiteSelection& sel, int jobs) {
  std::vector<std::string> wanted;
  if (sel.identities.empty()) {
    wanted = identity_names();
  } else {
    std::set<std::string> requested;
    for (const std::string& s : sel.identities) requested.insert(canonical_identity(s));
    for (const std::string& n : identity_names())
      if (requested.count(n)) wanted.push_back(n);
  }
  const auto fams = family_grid(sel);
  const bool rank_n = sel.n.has_value();
  const bool rank_pq = sel.p.has_value() || sel.q.has_value();
  const bool fam_free = sel.families.empty();

  std::vector<std::function<IdentityReport()>> tasks;
  const CheckOptions opt = sel.options;
  for (const std::string& id : wanted) {
    if (id == "generating-function") {
      for (const PairFamily& f : fams)
        tasks.emplace_back([f, opt] { return check_generating_function(f, opt); });
    } else if (id == "nilpotency") {
      for (const PairFamily& f : fams)
        tasks.emplace_back([f, opt] { return check_nilpotency(f, opt); });
    } else if (id == "deformed-conjugation") {
      for (const PairFamily& f : fams)
        tasks.emplace_back([f, opt] { return check_deformed(f, opt); });
    } else if (id == "lie-homomorphism") {
      for (const PairFamily& f : fams)
        tasks.emplace_back([f] { return check_lie_homomorphism(f); });
    } else if (id == "invariance") {
      for (const PairFamily& f : fams)
        tasks.emplace_back([f] { return check_invariance(f); });
    } else if (id == "symbol-consistency") {
      for (const PairFamily& f : fams)
        tasks.emplace_back([f] { return check_symbol_consistency(f); });
    } else if (id == "phi-generating-function") {
      if (!fam_free || rank_pq) continue;
      std::vector<int> ns;
      if (rank_n)
        ns.push_back(*sel.n);
      else
        ns = {1, 2, 3, 4, 5};
      for (int n : ns) {
        if (n < 1 || n > 6)
          throw std::invalid_argument("phi-generating-function needs 1 <= n <= 6");
        tasks.emplace_back([n] { return check_phi_generating_function(n); });
      }
    } else if (id == "minor-summation-pfaffian") {
      if (!fam_free || rank_pq) continue;
      std::vector<int> ns;
      if (rank_n) {
        if (*sel.n > 6 && !sel.unsafe)
          throw std::invalid_argument(
              "cost guard: minor-summation-pfaffian needs n <= 6 (unsafe overrides)");
        ns.push_back(*sel.n);
      } else {
        ns = {1, 2, 3};
      }
      for (int n : ns)
        tasks.emplace_back([n] { return check_msf(MsfKind::Pfaffian, n, 0); });
    } else if (id == "minor-summation-determinant") {
      if (!fam_free || rank_n) continue;
      std::vector<std::pair<int, int>> shapes;
      if (rank_pq) {
        if (!sel.p.has_value() || !sel.q.has_value())
          throw std::invalid_argument("minor-summation-determinant needs both p and q");
        if (*sel.p < 1 || *sel.q < 1)
          throw std::invalid_argument("minor-summation-determinant needs p, q >= 1");
        if (*sel.p + *sel.q > 7 && !sel.unsafe)
          throw std::invalid_argument(
              "cost guard: minor-summation-determinant needs p+q <= 7 (unsafe overrides)");
        shapes.emplace_back(*sel.p, *sel.q);
      } else {
        shapes = {{1, 1}, {2, 1}, {2, 2}, {3, 2}};
      }
      for (auto [p, q] : shapes)
        tasks.emplace_back([p, q, mode = sel.sign_mode] {
          return check_msf(MsfKind::Determinant, p, q, mode);
        });
    } else if (id == "kernel-cross-validation") {
      if (!fam_free || rank_n || rank_pq) continue;
      tasks.emplace_back([seed = sel.kernel_seed] { return check_kernels(seed); });
    }
  }

  std::vector<IdentityReport> reports(tasks.size());
  if (jobs <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) reports[i] = tasks[i]();
  } else {
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        reports[i] = tasks[i]();
      }
    };
    std::vector<std::thread> threads;
    const std::size_t count = std::min<std::size_t>(u32(jobs), tasks.size());
    threads.reserve(count);
    for (std::size_t t = 0; t < count; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  return reports;
}

}  // namespace hsp
