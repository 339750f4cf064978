#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hsp/families.hpp"

namespace hsp {

// Outcome of one identity check. params carries rank data and check-specific
// extras ("n", "p"/"q", "k", "seed", "sign_mode") under stable keys. witness
// is empty exactly when the check passed; on failure it names the first
// differing matrix entry in row-major order or the least differing term in
// the canonical term order.
struct IdentityReport {
  std::string identity;
  std::string family;  // "sostar", "sp", "su", or "-" for family-free checks
  std::map<std::string, int> params;
  bool pass = false;
  std::string witness;
  std::int64_t elapsed_ms = 0;
};

// Mutation hook for the sanity criterion: after construction, flip the sign
// of the sigma / sigma-tilde entry at the given 1-based position.
struct CheckOptions {
  bool mutate = false;
  int mutate_row = 1, mutate_col = 1;
};

// Explicit right-hand sides of the conjugation theorems, built independently
// of the sigma machinery: s sum_i X0_{i,i} - sum xi_{i,j} X-_{i,j} and its
// su diagonal analogue, respectively the block form with u+gamma_1 on the
// diagonal and -tau z_block in the upper-right corner.
PolyMatrix build_nilpotent_rhs(const PairFamily& f);
PolyMatrix build_deformed_rhs(const PairFamily& f);

// Stated expansion of Pf / det of sigma-tilde: sums of
// (u+gamma_1)-powers times tau^k gamma_k, with the family-dependent signs
// and the su shifts u_+, v_+.
Polynomial generating_function_rhs(const PairFamily& f);

// conjugate_sigma(build_sigma(false)) against build_nilpotent_rhs, entrywise.
IdentityReport check_nilpotency(const PairFamily& f, const CheckOptions& opt = {});
// conjugate_sigma(build_sigma(true)) against build_deformed_rhs, entrywise.
IdentityReport check_deformed(const PairFamily& f, const CheckOptions& opt = {});
// Pf / det of sigma-tilde against generating_function_rhs, computed both
// directly and after conjugation (the unipotent has determinant one). Small
// shapes additionally cross-check the production kernel against an
// independent backend.
IdentityReport check_generating_function(const PairFamily& f, const CheckOptions& opt = {});
// Pf(build_phi(n, u)) against sum_k u^{n-2k} gamma_k. pre: n <= 6.
IdentityReport check_phi_generating_function(int n);

enum class MsfKind { Pfaffian, Determinant };

// Minor summation formulas on fully generic symbolic input: kind Pfaffian
// takes the antidiagonal-alternating 2a x 2a matrix (b ignored), kind
// Determinant the [[u 1_p, b],[c, v 1_q]] block matrix with (a, b) = (p, q).
IdentityReport check_msf(MsfKind kind, int a, int b,
                         DetSignMode mode = DetSignMode::AlternatingK);
// [dpi(X), dpi(Y)] = dpi([X, Y]) over all basis pairs.
IdentityReport check_lie_homomorphism(const PairFamily& f);
// [k-part operator at s=0, Gamma_k] = 0 for all k <= r.
IdentityReport check_invariance(const PairFamily& f);
// weyl_symbol(Gamma_k) = gamma_k for all k, and sigma-tilde specializes to
// sigma under u -> s - gamma_1.
IdentityReport check_symbol_consistency(const PairFamily& f);
// Randomized cross-validation of the Pf / det backends: expansion vs
// matchings and Pf^2 = det on alternating instances up to 8x8, Leibniz vs
// Bareiss vs expansion up to 6x6; 100 instances each, fixed seed.
IdentityReport check_kernels(std::uint64_t seed);

// Canonical identity names in suite order, and alias resolution (accepts the
// short command-line ids such as "gen-fn"); throws std::invalid_argument on
// unknown names.
const std::vector<std::string>& identity_names();
std::string canonical_identity(const std::string& name_or_alias);

// Suite selection. Empty identity / family lists select everything; explicit
// rank values replace the default grids and are validated against the cost
// guards (sostar n <= 6, sp n <= 4, su p+q <= 7) unless unsafe is set. Rank
// or family filters exclude checks they do not apply to.
struct SuiteSelection {
  std::vector<std::string> identities;
  std::vector<std::string> families;
  std::optional<int> n, p, q;
  DetSignMode sign_mode = DetSignMode::AlternatingK;
  bool unsafe = false;
  CheckOptions options;
  std::uint64_t kernel_seed = 12345;
};

// Runs the selected checks, possibly on several worker threads, and returns
// the reports in deterministic declared order regardless of completion order.
std::vector<IdentityReport> run_suite(const SuiteSelection& sel, int jobs = 1);

}  // namespace hsp
