#include "hsp/weyl.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace hsp {

WeylOperator WeylOperator::one() { return from_polynomial(Polynomial::from_int(1)); }

WeylOperator WeylOperator::from_polynomial(Polynomial p) {
  for (const auto& t : p.terms())
    for (const auto& [v, e] : t.mono.vars) {
      VarKind k = var_kind(v);
      if (k != VarKind::Z && k != VarKind::S && k != VarKind::D)
        throw std::invalid_argument("WeylOperator: only z, s and d variables allowed");
    }
  WeylOperator w;
  w.repr_ = std::move(p);
  return w;
}

WeylOperator weyl_add(const WeylOperator& a, const WeylOperator& b) {
  return WeylOperator::from_polynomial(poly_add(a.repr(), b.repr()));
}

WeylOperator weyl_sub(const WeylOperator& a, const WeylOperator& b) {
  return WeylOperator::from_polynomial(poly_sub(a.repr(), b.repr()));
}

WeylOperator weyl_neg(const WeylOperator& a) {
  return WeylOperator::from_polynomial(poly_neg(a.repr()));
}

WeylOperator weyl_scale(const WeylOperator& a, const Rational& c) {
  return WeylOperator::from_polynomial(poly_scale(a.repr(), c));
}

namespace {

struct SplitTerm {
  // zs: z and s factors; d: derivative factors.
  std::vector<std::pair<VariableId, std::uint32_t>> zs, d;
};

SplitTerm split(const Monomial& m) {
  SplitTerm r;
  for (const auto& [v, e] : m.vars) {
    if (var_kind(v) == VarKind::D) r.d.emplace_back(v, e);
    else r.zs.emplace_back(v, e);
  }
  return r;
}

unsigned long binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  unsigned long r = 1;
  for (std::uint32_t t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

unsigned long factorial(std::uint32_t n) {
  unsigned long r = 1;
  for (std::uint32_t t = 2; t <= n; ++t) r *= t;
  return r;
}

}  // namespace

WeylOperator weyl_compose(const WeylOperator& a, const WeylOperator& b) {
  std::vector<Term> out;
  for (const auto& ta : a.repr().terms()) {
    SplitTerm sa = split(ta.mono);
    for (const auto& tb : b.repr().terms()) {
      SplitTerm sb = split(tb.mono);
      // Leibniz reordering of d^{N} z^{M}: the derivatives of a may act on the
      // matching z factors of b. Collect the contraction candidates.
      struct Pair { std::size_t ia, ib; std::uint32_t max; };
      std::vector<Pair> pairs;
      for (std::size_t ia = 0; ia < sa.d.size(); ++ia) {
        VariableId dv = sa.d[ia].first;
        VariableId zv = var_z(var_i(dv), var_j(dv));
        for (std::size_t ib = 0; ib < sb.zs.size(); ++ib)
          if (sb.zs[ib].first == zv) {
            pairs.push_back({ia, ib, std::min(sa.d[ia].second, sb.zs[ib].second)});
            break;
          }
      }
      std::vector<std::uint32_t> kvec(pairs.size(), 0);
      while (true) {
        unsigned long coeff = 1;
        for (std::size_t t = 0; t < pairs.size(); ++t) {
          std::uint32_t k = kvec[t];
          coeff *= binomial(sa.d[pairs[t].ia].second, k) *
                   binomial(sb.zs[pairs[t].ib].second, k) * factorial(k);
        }
        auto zs_b = sb.zs;
        auto d_a = sa.d;
        for (std::size_t t = 0; t < pairs.size(); ++t) {
          d_a[pairs[t].ia].second -= kvec[t];
          zs_b[pairs[t].ib].second -= kvec[t];
        }
        // Result term: z^{M1} z^{M2-K} d^{N1-K} d^{N2}; collect and sort.
        Monomial ma, mb;
        for (const auto& [v, e] : sa.zs) if (e > 0) ma.vars.emplace_back(v, e);
        for (const auto& [v, e] : zs_b) if (e > 0) mb.vars.emplace_back(v, e);
        for (const auto& [v, e] : d_a) if (e > 0) mb.vars.emplace_back(v, e);
        for (const auto& [v, e] : sb.d) if (e > 0) mb.vars.emplace_back(v, e);
        std::sort(mb.vars.begin(), mb.vars.end());
        Monomial merged;
        for (const auto& [v, e] : mb.vars) {
          if (!merged.vars.empty() && merged.vars.back().first == v)
            merged.vars.back().second += e;
          else
            merged.vars.emplace_back(v, e);
        }
        out.push_back({monomial_mul(ma, merged),
                       ta.coeff * tb.coeff * Rational(static_cast<long>(coeff))});
        std::size_t t = 0;
        while (t < pairs.size() && kvec[t] == pairs[t].max) kvec[t++] = 0;
        if (t == pairs.size()) break;
        ++kvec[t];
      }
    }
  }
  return WeylOperator::from_polynomial(Polynomial::from_terms(std::move(out)));
}

WeylOperator weyl_commutator(const WeylOperator& a, const WeylOperator& b) {
  return weyl_sub(weyl_compose(a, b), weyl_compose(b, a));
}

Polynomial weyl_apply(const WeylOperator& a, const Polynomial& p) {
  for (const auto& t : p.terms())
    for (const auto& [v, e] : t.mono.vars)
      if (var_kind(v) != VarKind::Z)
        throw std::invalid_argument("weyl_apply: argument must be a polynomial in z");
  std::vector<Term> out;
  for (const auto& ta : a.repr().terms()) {
    SplitTerm sa = split(ta.mono);
    for (const auto& tp : p.terms()) {
      // d^{N} z^{P} 1 = prod falling(P_v, N_v) z^{P-N}, zero unless N <= P.
      Rational coeff = ta.coeff * tp.coeff;
      Monomial reduced = tp.mono;
      bool dead = false;
      for (const auto& [dv, de] : sa.d) {
        VariableId zv = var_z(var_i(dv), var_j(dv));
        bool found = false;
        for (auto& [v, e] : reduced.vars) {
          if (v != zv) continue;
          found = true;
          if (e < de) { dead = true; break; }
          for (std::uint32_t t = 0; t < de; ++t) coeff *= static_cast<long>(e - t);
          e -= de;
          break;
        }
        if (!found) dead = true;
        if (dead) break;
      }
      if (dead) continue;
      Monomial cleaned;
      for (const auto& [v, e] : reduced.vars)
        if (e > 0) cleaned.vars.emplace_back(v, e);
      out.push_back({monomial_mul(Monomial{sa.zs}, cleaned), coeff});
    }
  }
  return Polynomial::from_terms(std::move(out));
}

Polynomial weyl_symbol(const WeylOperator& a) {
  std::vector<Term> out;
  for (const auto& t : a.repr().terms()) {
    Monomial m;
    for (const auto& [v, e] : t.mono.vars)
      m.vars.emplace_back(var_kind(v) == VarKind::D ? var_xi(var_i(v), var_j(v)) : v, e);
    std::sort(m.vars.begin(), m.vars.end());
    out.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(std::move(out));
}

std::string to_string(const WeylOperator& a) { return to_string(a.repr()); }

}  // namespace hsp
