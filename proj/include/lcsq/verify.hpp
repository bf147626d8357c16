#pragma once

#include <cstdint>
#include <vector>

#include "lcsq/distributions.hpp"
#include "lcsq/report.hpp"

namespace lcsq {

/// Product of the three pairwise LCS lengths over permutation triples is at
/// least n. Exhaustive mode scans all n!^3 ordered triples (n <= 5 by default,
/// n = 6 allowed with allow_heavy); sampled mode draws random triples, n <= 10.
VerificationReport check_triple_product(int n, bool exhaustive, std::uint64_t samples = 1'000'000,
                                        std::uint64_t seed = 0, bool allow_heavy = false);

/// Serial reference scan, kept for testing the parallel path.
VerificationReport check_triple_product_serial(int n);

/// LIS(pi) * LDS(pi) >= n over all of S_n (n <= 8), via the two LCS statistics
/// against id and rev(id). Exact integer arithmetic.
VerificationReport check_erdos_szekeres(int n);

/// Spectral inequalities for n = 2..n_max: spectral radius bound, the two
/// exponential growth bounds, the doubling step, and strict decrease of the
/// bottom eigenvalue.
std::vector<VerificationReport> check_spectral_claims(int n_max, double tol = 1e-6);

/// Three layers of the cube-root bound for one distribution: the pairwise
/// inequality (n <= 6 only), the aggregate sum, and the expectation itself.
VerificationReport check_cubic_chain(const Distribution& p);
VerificationReport check_cubic_chain(const Distribution& p, const MatrixOperator& op);

}  // namespace lcsq
