#include "lcsq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lcsq/spectra.hpp"

namespace lcsq {

namespace {

std::string perm_str(const Permutation& p) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < p.degree(); ++i) {
        if (i) os << ',';
        os << static_cast<int>(p[i]);
    }
    os << ']';
    return os.str();
}

std::string triple_witness(int n, std::uint64_t i, std::uint64_t j, std::uint64_t k,
                           std::uint64_t product) {
    std::ostringstream os;
    os << "(" << i << "," << j << "," << k << ") " << perm_str(unrank(n, i)) << " "
       << perm_str(unrank(n, j)) << " " << perm_str(unrank(n, k)) << " product=" << product;
    return os.str();
}

}  // namespace

VerificationReport check_triple_product(int n, bool exhaustive, std::uint64_t samples,
                                        std::uint64_t seed, bool allow_heavy) {
    VerificationReport rep;
    rep.claim = "triple-product";
    rep.n = n;
    if (exhaustive) {
        if (n > 6 || (n == 6 && !allow_heavy))
            throw std::invalid_argument(
                "check_triple_product: exhaustive mode limited to n<=5 (6 with allow_heavy)");
        rep.mode = VerificationReport::Mode::exhaustive;
        const auto m = build_dense(n);
        const std::size_t dim = m.dim;
        rep.cases = static_cast<std::uint64_t>(dim) * dim * dim;

        std::uint64_t min_prod = UINT64_MAX;
        std::uint64_t wi = 0, wj = 0, wk = 0;
        std::uint64_t viols = 0;
#pragma omp parallel
        {
            std::uint64_t lmin = UINT64_MAX, li = 0, lj = 0, lk = 0, lv = 0;
#pragma omp for schedule(dynamic, 4) nowait
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(dim); ++i) {
                const std::uint8_t* row_i = &m.entries[static_cast<std::size_t>(i) * dim];
                for (std::size_t j = 0; j < dim; ++j) {
                    const std::uint64_t ij = row_i[j];
                    const std::uint8_t* row_j = &m.entries[j * dim];
                    for (std::size_t k = 0; k < dim; ++k) {
                        const std::uint64_t p = ij * row_j[k] * row_i[k];
                        if (p < static_cast<std::uint64_t>(n)) ++lv;
                        if (p < lmin) {
                            lmin = p;
                            li = static_cast<std::uint64_t>(i);
                            lj = j;
                            lk = k;
                        }
                    }
                }
            }
#pragma omp critical
            {
                viols += lv;
                if (lmin < min_prod ||
                    (lmin == min_prod && std::tie(li, lj, lk) < std::tie(wi, wj, wk))) {
                    min_prod = lmin;
                    wi = li;
                    wj = lj;
                    wk = lk;
                }
            }
        }
        rep.violations = viols;
        rep.slack = static_cast<double>(min_prod) - static_cast<double>(n);
        rep.witness = triple_witness(n, wi, wj, wk, min_prod);
        return rep;
    }

    if (n > 10) throw std::invalid_argument("check_triple_product: sampled mode limited to n<=10");
    rep.mode = VerificationReport::Mode::sampled;
    rep.cases = samples;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, factorial(n) - 1);
    std::uint64_t min_prod = UINT64_MAX, wi = 0, wj = 0, wk = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const auto i = pick(rng), j = pick(rng), k = pick(rng);
        const auto pi = unrank(n, i), pj = unrank(n, j), pk = unrank(n, k);
        const std::uint64_t p = static_cast<std::uint64_t>(lcs_perm(pi, pj)) *
                                static_cast<std::uint64_t>(lcs_perm(pj, pk)) *
                                static_cast<std::uint64_t>(lcs_perm(pk, pi));
        if (p < static_cast<std::uint64_t>(n)) ++rep.violations;
        if (p < min_prod) {
            min_prod = p;
            wi = i;
            wj = j;
            wk = k;
        }
    }
    rep.slack = static_cast<double>(min_prod) - static_cast<double>(n);
    rep.witness = triple_witness(n, wi, wj, wk, min_prod);
    return rep;
}

VerificationReport check_triple_product_serial(int n) {
    VerificationReport rep;
    rep.claim = "triple-product";
    rep.n = n;
    rep.mode = VerificationReport::Mode::exhaustive;
    const auto m = build_dense_serial(n);
    const std::size_t dim = m.dim;
    rep.cases = static_cast<std::uint64_t>(dim) * dim * dim;
    std::uint64_t min_prod = UINT64_MAX, wi = 0, wj = 0, wk = 0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) {
                const std::uint64_t p = static_cast<std::uint64_t>(m.at(i, j)) * m.at(j, k) *
                                        m.at(i, k);
                if (p < static_cast<std::uint64_t>(n)) ++rep.violations;
                if (p < min_prod) {
                    min_prod = p;
                    wi = i;
                    wj = j;
                    wk = k;
                }
            }
    rep.slack = static_cast<double>(min_prod) - static_cast<double>(n);
    rep.witness = triple_witness(n, wi, wj, wk, min_prod);
    return rep;
}

VerificationReport check_erdos_szekeres(int n) {
    if (n > 8) throw std::invalid_argument("check_erdos_szekeres: n must be <= 8");
    VerificationReport rep;
    rep.claim = "erdos-szekeres";
    rep.n = n;
    rep.mode = VerificationReport::Mode::exhaustive;
    const auto id = Permutation::identity(n);
    const auto rev = Permutation::reversed_identity(n);
    const auto perms = enumerate_all(n);
    rep.cases = perms.size();
    std::uint64_t min_prod = UINT64_MAX, tight = 0;
    std::size_t wit = 0;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        const std::uint64_t p = static_cast<std::uint64_t>(lcs_perm(id, perms[i])) *
                                static_cast<std::uint64_t>(lcs_perm(rev, perms[i]));
        if (p < static_cast<std::uint64_t>(n)) ++rep.violations;
        if (p == static_cast<std::uint64_t>(n)) ++tight;
        if (p < min_prod) {
            min_prod = p;
            wit = i;
        }
    }
    rep.slack = static_cast<double>(min_prod) - static_cast<double>(n);
    std::ostringstream os;
    os << perm_str(perms[wit]) << " product=" << min_prod << " (tight cases: " << tight << ")";
    rep.witness = os.str();
    return rep;
}

std::vector<VerificationReport> check_spectral_claims(int n_max, double tol) {
    if (n_max < 2 || n_max > kDenseLimit)
        throw std::invalid_argument("check_spectral_claims: n_max must be in [2,7]");
    std::vector<VerificationReport> out;
    double prev_min = 0.0, prev_second = 0.0;
    for (int n = 2; n <= n_max; ++n) {
        const auto s = spectral_summary(n);
        VerificationReport rep;
        rep.claim = "spectral-bounds";
        rep.n = n;
        rep.mode = VerificationReport::Mode::exhaustive;
        rep.slack = std::numeric_limits<double>::infinity();
        std::ostringstream worst;

        auto check = [&](const char* name, double slack) {
            ++rep.cases;
            if (slack < -tol) {
                ++rep.violations;
                worst.str(std::string());
                worst << name << " violated by " << -slack;
                rep.slack = slack;
            } else if (slack < rep.slack) {
                rep.slack = slack;
                worst.str(std::string());
                worst << name << " (slack " << slack << ")";
            }
        };

        const double radius = static_cast<double>(total_lis(n));
        check("spectral radius >= |lambda_min|", radius - std::abs(s.lambda_min));
        check("spectral radius >= |lambda_second|", radius - std::abs(s.lambda_second_max));
        check("spectral radius >= lambda_max", radius - s.lambda_max + tol);
        check("lambda_max = total_lis", tol - std::abs(s.lambda_max - radius));
        if (n >= 4)
            check("lambda_min <= -2^(n-3)", -std::ldexp(1.0, n - 3) - s.lambda_min);
        check("lambda_second >= 2^(n-2)", s.lambda_second_max - std::ldexp(1.0, n - 2));
        if (n >= 3) check("lambda_min strictly decreasing", prev_min - s.lambda_min - 1e-9);
        if (n >= 3) check("lambda_min doubling", 2.0 * prev_min - s.lambda_min);
        if (n >= 3) check("lambda_second doubling", s.lambda_second_max - 2.0 * prev_second);
        rep.witness = worst.str();
        prev_min = s.lambda_min;
        prev_second = s.lambda_second_max;
        out.push_back(std::move(rep));
    }
    return out;
}

VerificationReport check_cubic_chain(const Distribution& p, const MatrixOperator& op) {
    if (p.weights.size() != op.dim())
        throw std::invalid_argument("check_cubic_chain: dimension mismatch");
    const int n = p.n;
    VerificationReport rep;
    rep.claim = "cubic-root-chain";
    rep.n = n;
    rep.mode = VerificationReport::Mode::exhaustive;
    const double cbrt_n = std::cbrt(static_cast<double>(n));
    const auto marg = op.apply(p.weights);  // marginal LCS per enumeration index
    rep.slack = std::numeric_limits<double>::infinity();

    if (n <= 6 && op.is_dense()) {
        const auto& m = op.matrix();
        std::size_t wi = 0, wj = 0;
        for (std::size_t i = 0; i < m.dim; ++i)
            for (std::size_t j = 0; j < m.dim; ++j) {
                ++rep.cases;
                const double lhs = marg[i] + static_cast<double>(m.at(i, j)) + marg[j];
                const double slack = lhs - 3.0 * cbrt_n;
                if (slack < 0.0) ++rep.violations;
                if (slack < rep.slack) {
                    rep.slack = slack;
                    wi = i;
                    wj = j;
                }
            }
        std::ostringstream os;
        os << "pairwise minimum at (" << wi << "," << wj << ")";
        rep.witness = os.str();
    }

    double aggregate = 0.0;
    for (std::size_t i = 0; i < marg.size(); ++i) aggregate += p.weights[i] * marg[i];
    const double expectation = expectation_exact(p, op);
    for (auto [name, slack] : {std::pair<const char*, double>{"aggregate", aggregate - cbrt_n},
                               {"expectation", expectation - cbrt_n}}) {
        ++rep.cases;
        if (slack < 0.0) {
            ++rep.violations;
            rep.witness = std::string(name) + " below cbrt(n)";
        }
        if (slack < rep.slack) rep.slack = slack;
    }
    return rep;
}

VerificationReport check_cubic_chain(const Distribution& p) {
    return check_cubic_chain(p, MatrixOperator::dense(build_dense(p.n)));
}

}  // namespace lcsq
