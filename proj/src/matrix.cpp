#include "hsp/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace hsp {

PolyMatrix pm_identity(int n) { return pm_scalar(n, Polynomial::from_int(1)); }

PolyMatrix pm_scalar(int n, const Polynomial& p) {
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = p;
  return m;
}

PolyMatrix j_matrix(int n) {
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, n - 1 - i) = Polynomial::from_int(1);
  return m;
}

static void check_same_shape(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("matrix shape mismatch");
}

PolyMatrix pm_add(const PolyMatrix& a, const PolyMatrix& b) {
  check_same_shape(a, b);
  PolyMatrix r(a.rows, a.cols);
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    r.entries[i] = poly_add(a.entries[i], b.entries[i]);
  return r;
}

PolyMatrix pm_sub(const PolyMatrix& a, const PolyMatrix& b) {
  check_same_shape(a, b);
  PolyMatrix r(a.rows, a.cols);
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    r.entries[i] = poly_sub(a.entries[i], b.entries[i]);
  return r;
}

PolyMatrix pm_neg(const PolyMatrix& a) {
  PolyMatrix r(a.rows, a.cols);
  for (std::size_t i = 0; i < a.entries.size(); ++i) r.entries[i] = poly_neg(a.entries[i]);
  return r;
}

PolyMatrix pm_mul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch in product");
  PolyMatrix r(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const Polynomial& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols; ++j) {
        const Polynomial& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) = poly_add(r.at(i, j), poly_mul(aik, bkj));
      }
    }
  return r;
}

PolyMatrix pm_scale(const PolyMatrix& a, const Polynomial& p) {
  PolyMatrix r(a.rows, a.cols);
  for (std::size_t i = 0; i < a.entries.size(); ++i) r.entries[i] = poly_mul(a.entries[i], p);
  return r;
}

PolyMatrix pm_transpose(const PolyMatrix& a) {
  PolyMatrix r(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
  return r;
}

bool pm_is_zero(const PolyMatrix& a) {
  for (const auto& e : a.entries)
    if (!e.is_zero()) return false;
  return true;
}

bool is_alternating(const PolyMatrix& a) {
  if (a.rows != a.cols) return false;
  for (int i = 0; i < a.rows; ++i)
    for (int j = i; j < a.cols; ++j)
      if (a.at(i, j) != poly_neg(a.at(j, i))) return false;
  return true;
}

std::vector<IndexSubset> subsets_of_size(int n, int k) {
  std::vector<IndexSubset> out;
  if (k < 0 || k > n) return out;
  IndexSubset cur(k);
  std::iota(cur.begin(), cur.end(), 1);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int t = i + 1; t < k; ++t) cur[t] = cur[t - 1] + 1;
  }
  return out;
}

IndexSubset complement_subset(int n, const IndexSubset& s) {
  IndexSubset out;
  out.reserve(n - s.size());
  std::size_t p = 0;
  for (int v = 1; v <= n; ++v) {
    if (p < s.size() && s[p] == v) ++p;
    else out.push_back(v);
  }
  return out;
}

PolyMatrix submatrix(const PolyMatrix& m, const IndexSubset& rows, const IndexSubset& cols) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i] < 1 || rows[i] > m.rows || (i > 0 && rows[i] <= rows[i - 1]))
      throw std::invalid_argument("bad row subset");
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (cols[j] < 1 || cols[j] > m.cols || (j > 0 && cols[j] <= cols[j - 1]))
      throw std::invalid_argument("bad column subset");
  PolyMatrix r(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      r.at(static_cast<int>(i), static_cast<int>(j)) = m.at(rows[i] - 1, cols[j] - 1);
  return r;
}

int perm_sign(const IndexSubset& first, const IndexSubset& second) {
  int n = static_cast<int>(first.size() + second.size());
  std::vector<bool> seen(n + 1, false);
  for (const auto* part : {&first, &second}) {
    int prev = 0;
    for (int v : *part) {
      if (v < 1 || v > n || v <= prev || seen[v])
        throw std::invalid_argument("perm_sign: not a partition of [n]");
      seen[v] = true;
      prev = v;
    }
  }
  // Both parts ascend, so inversions are exactly the crossing pairs.
  long inversions = 0;
  for (int x : first)
    for (int y : second)
      if (x > y) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

Polynomial det_leibniz(const PolyMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det of nonsquare matrix");
  int n = m.rows;
  if (n > 6) throw std::invalid_argument("det_leibniz: dimension guard (n <= 6)");
  if (n == 0) return Polynomial::from_int(1);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial det;
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    Polynomial prod = Polynomial::from_int(inv % 2 == 0 ? 1 : -1);
    for (int i = 0; i < n && !prod.is_zero(); ++i) prod = poly_mul(prod, m.at(i, perm[i]));
    det = poly_add(det, prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

Polynomial det_bareiss(const PolyMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det of nonsquare matrix");
  int n = m.rows;
  if (n == 0) return Polynomial::from_int(1);
  PolyMatrix w = m;
  Polynomial prev = Polynomial::from_int(1);
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    // Full pivoting on the fewest-terms nonzero entry. The division steps stay
    // exact for any pivot choice, and small pivots keep intermediate products
    // (and the exact divisions by them) cheap on symbolic input.
    int pr = -1, pc = -1;
    std::size_t best = 0;
    for (int i = k; i < n; ++i)
      for (int j = k; j < n; ++j) {
        std::size_t sz = w.at(i, j).terms().size();
        if (sz != 0 && (pr < 0 || sz < best)) {
          pr = i;
          pc = j;
          best = sz;
        }
      }
    if (pr < 0) return Polynomial();
    if (pr != k) {
      for (int j = k; j < n; ++j) std::swap(w.at(k, j), w.at(pr, j));
      sign = -sign;
    }
    if (pc != k) {
      for (int i = k; i < n; ++i) std::swap(w.at(i, k), w.at(i, pc));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = poly_exact_div(
            poly_sub(poly_mul(w.at(i, j), w.at(k, k)), poly_mul(w.at(i, k), w.at(k, j))), prev);
    prev = w.at(k, k);
  }
  return sign == 1 ? w.at(n - 1, n - 1) : poly_neg(w.at(n - 1, n - 1));
}

Polynomial det_expansion(const PolyMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det of nonsquare matrix");
  int n = m.rows;
  if (n > 62) throw std::invalid_argument("det_expansion: matrix too large");
  if (n == 0) return Polynomial::from_int(1);

  // Same heuristic as pfaffian_expansion: light rows first, so the expensive
  // deep minors multiply the cheap entries. Row swaps flip the sign.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> weight(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) weight[i] += m.at(i, j).terms().size();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weight[a] < weight[b]; });
  int inv = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (order[i] > order[j]) ++inv;
  PolyMatrix w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w.at(i, j) = m.at(order[i], j);

  // Minor of the last popcount(mask) rows on the columns in mask.
  std::unordered_map<std::uint64_t, Polynomial> memo;
  std::function<const Polynomial&(std::uint64_t)> minor =
      [&](std::uint64_t mask) -> const Polynomial& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Polynomial val;
    if (mask == 0) {
      val = Polynomial::from_int(1);
    } else {
      int row = n - std::popcount(mask);
      int s = 1;
      for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
        int c = std::countr_zero(bits);
        const Polynomial& e = w.at(row, c);
        if (!e.is_zero()) {
          Polynomial contrib = poly_mul(e, minor(mask & ~(std::uint64_t(1) << c)));
          val = poly_add(val, s == 1 ? contrib : poly_neg(contrib));
        }
        s = -s;
      }
    }
    return memo.emplace(mask, std::move(val)).first->second;
  };
  Polynomial result = minor((std::uint64_t(1) << n) - 1);
  return inv % 2 == 0 ? result : poly_neg(result);
}

static void check_pfaffian_input(const PolyMatrix& m, const char* who) {
  if (m.rows != m.cols || m.rows % 2 != 0)
    throw std::invalid_argument(std::string(who) + ": even square matrix required");
  if (!is_alternating(m))
    throw std::invalid_argument(std::string(who) + ": alternating matrix required");
}

Polynomial pfaffian_matchings(const PolyMatrix& m) {
  check_pfaffian_input(m, "pfaffian_matchings");
  int n2 = m.rows;
  if (n2 > 12) throw std::invalid_argument("pfaffian_matchings: dimension guard (2n <= 12)");
  if (n2 == 0) return Polynomial::from_int(1);
  Polynomial sum;
  std::vector<std::pair<int, int>> pairs(n2 / 2);
  std::vector<bool> used(n2, false);
  // Depth-first enumeration of perfect matchings of {0,...,n2-1}; each pair is
  // stored (low, high) and the sign is the crossing-number parity.
  std::function<void(int)> rec = [&](int depth) {
    if (depth == n2 / 2) {
      int crossings = 0;
      for (int x = 0; x < depth; ++x)
        for (int y = x + 1; y < depth; ++y) {
          auto [a, b] = pairs[x];
          auto [c, d] = pairs[y];
          if (c < a) { std::swap(a, c); std::swap(b, d); }
          if (a < c && c < b && b < d) ++crossings;
        }
      Polynomial prod = Polynomial::from_int(crossings % 2 == 0 ? 1 : -1);
      for (int x = 0; x < depth && !prod.is_zero(); ++x)
        prod = poly_mul(prod, m.at(pairs[x].first, pairs[x].second));
      sum = poly_add(sum, prod);
      return;
    }
    int a = 0;
    while (used[a]) ++a;
    used[a] = true;
    for (int b = a + 1; b < n2; ++b) {
      if (used[b]) continue;
      used[b] = true;
      pairs[depth] = {a, b};
      rec(depth + 1);
      used[b] = false;
    }
    used[a] = false;
  };
  rec(0);
  return sum;
}

Polynomial pfaffian_expansion(const PolyMatrix& m) {
  check_pfaffian_input(m, "pfaffian_expansion");
  int n2 = m.rows;
  if (n2 > 62) throw std::invalid_argument("pfaffian_expansion: matrix too large");
  if (n2 == 0) return Polynomial::from_int(1);

  // Symmetrically permute light rows to the front so that the expensive deep
  // minors multiply the cheap entries. Pf(P m P^T) = sgn(P) Pf(m).
  std::vector<int> order(n2);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> weight(n2, 0);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j) weight[i] += m.at(i, j).terms().size();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weight[a] < weight[b]; });
  int inv = 0;
  for (int i = 0; i < n2; ++i)
    for (int j = i + 1; j < n2; ++j)
      if (order[i] > order[j]) ++inv;
  PolyMatrix w(n2, n2);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j) w.at(i, j) = m.at(order[i], order[j]);

  std::unordered_map<std::uint64_t, Polynomial> memo;
  std::function<const Polynomial&(std::uint64_t)> pf = [&](std::uint64_t mask) -> const Polynomial& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Polynomial val;
    if (mask == 0) {
      val = Polynomial::from_int(1);
    } else {
      int i0 = std::countr_zero(mask);
      std::uint64_t rest = mask & (mask - 1);
      int s = 1;
      for (std::uint64_t bits = rest; bits != 0; bits &= bits - 1) {
        int j = std::countr_zero(bits);
        const Polynomial& e = w.at(i0, j);
        if (!e.is_zero()) {
          Polynomial contrib = poly_mul(e, pf(rest & ~(std::uint64_t(1) << j)));
          val = poly_add(val, s == 1 ? contrib : poly_neg(contrib));
        }
        s = -s;
      }
    }
    return memo.emplace(mask, std::move(val)).first->second;
  };
  std::uint64_t full = (n2 == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << n2) - 1);
  Polynomial result = pf(full);
  return inv % 2 == 0 ? result : poly_neg(result);
}

Polynomial pf_antidiag(const PolyMatrix& m) {
  if (m.rows != m.cols || m.rows % 2 != 0)
    throw std::invalid_argument("pf_antidiag: even square matrix required");
  PolyMatrix mj = pm_mul(m, j_matrix(m.rows));
  if (!is_alternating(mj))
    throw std::invalid_argument("pf_antidiag: m * J is not alternating");
  return pfaffian_expansion(mj);
}

Polynomial msf_pf_rhs(const PolyMatrix& m, int n) {
  if (m.rows != 2 * n || m.cols != 2 * n)
    throw std::invalid_argument("msf_pf_rhs: shape mismatch");
  IndexSubset top(n), bottom(n);
  std::iota(top.begin(), top.end(), 1);
  std::iota(bottom.begin(), bottom.end(), n + 1);
  PolyMatrix a = submatrix(m, top, top);
  PolyMatrix b = submatrix(m, top, bottom);
  PolyMatrix c = submatrix(m, bottom, top);
  PolyMatrix d = submatrix(m, bottom, bottom);
  PolyMatrix jn = j_matrix(n);
  PolyMatrix bt = pm_mul(b, jn);
  PolyMatrix ct = pm_neg(pm_mul(jn, c));
  if (!is_alternating(bt) || !is_alternating(ct))
    throw std::invalid_argument("msf_pf_rhs: off-diagonal blocks not in parametrized form");
  if (!(d == pm_neg(pm_mul(pm_mul(jn, pm_transpose(a)), jn))))
    throw std::invalid_argument("msf_pf_rhs: lower-right block not in parametrized form");
  Polynomial sum;
  for (int k = 0; 2 * k <= n; ++k) {
    auto subs = subsets_of_size(n, 2 * k);
    for (const auto& I : subs) {
      IndexSubset Ibar = complement_subset(n, I);
      int sI = perm_sign(Ibar, I);
      Polynomial pfb = pfaffian_expansion(submatrix(bt, I, I));
      if (pfb.is_zero()) continue;
      for (const auto& J : subs) {
        IndexSubset Jbar = complement_subset(n, J);
        int sJ = perm_sign(Jbar, J);
        Polynomial term = poly_mul(det_bareiss(submatrix(a, Ibar, Jbar)), pfb);
        term = poly_mul(term, pfaffian_expansion(submatrix(ct, J, J)));
        if (sI * sJ < 0) term = poly_neg(term);
        sum = poly_add(sum, term);
      }
    }
  }
  return sum;
}

Polynomial msf_det_rhs(const PolyMatrix& b, const PolyMatrix& c, const Polynomial& u,
                       const Polynomial& v, DetSignMode mode) {
  int p = b.rows, q = b.cols;
  if (c.rows != q || c.cols != p) throw std::invalid_argument("msf_det_rhs: shape mismatch");
  Polynomial sum;
  for (int k = 0; k <= std::min(p, q); ++k) {
    Polynomial uv = poly_mul(poly_pow(u, p - k), poly_pow(v, q - k));
    for (const auto& I : subsets_of_size(p, k)) {
      for (const auto& J : subsets_of_size(q, k)) {
        int sign = 1;
        switch (mode) {
          case DetSignMode::AsPrinted: break;
          case DetSignMode::AlternatingK: sign = (k % 2 == 0) ? 1 : -1; break;
          case DetSignMode::SubsetSign:
            sign = perm_sign(complement_subset(p, I), I) * perm_sign(complement_subset(q, J), J);
            break;
        }
        Polynomial term = poly_mul(det_bareiss(submatrix(b, I, J)),
                                   det_bareiss(submatrix(c, J, I)));
        term = poly_mul(term, uv);
        if (sign < 0) term = poly_neg(term);
        sum = poly_add(sum, term);
      }
    }
  }
  return sum;
}

}  // namespace hsp
