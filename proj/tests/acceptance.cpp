// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "lcsq/cli.hpp"
#include "lcsq/distributions.hpp"
#include "lcsq/optimizer.hpp"
#include "lcsq/spectra.hpp"
#include "lcsq/verify.hpp"

using namespace lcsq;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

Distribution random_distribution(int n, std::mt19937_64& rng) {
    Distribution d;
    d.n = n;
    d.weights.resize(factorial(n));
    std::exponential_distribution<double> exp1(1.0);
    double s = 0.0;
    for (auto& w : d.weights) {
        w = exp1(rng);
        s += w;
    }
    for (auto& w : d.weights) w /= s;
    return d;
}

void criterion_1() {
    const auto rows = ratio_table(7);
    const double lam_min[] = {-2.0, -5.0835, -20.2413, -102.9541};
    const double lam_2nd[] = {6.6055, 30.0293, 166.1372, 1083.7641};
    const double rat_min[] = {1.0, 2.5417, 3.9817, 5.0860};
    const double rat_2nd[] = {1.0, 4.5460, 5.5324, 6.5233};
    bool ok = rows.size() == 4;
    std::ostringstream detail;
    for (std::size_t i = 0; ok && i < 4; ++i) {
        const double tol_2nd = (rows[i].n == 7) ? 1e-1 : 1e-3;
        if (!close(rows[i].lambda_min, lam_min[i], 1e-3) ||
            !close(rows[i].lambda_second, lam_2nd[i], tol_2nd) ||
            !close(rows[i].ratio_min, rat_min[i], 5e-3) ||
            !close(rows[i].ratio_second, rat_2nd[i], 5e-3)) {
            ok = false;
            detail << "row n=" << rows[i].n << " mismatch: " << rows[i].lambda_min << " "
                   << rows[i].lambda_second << " " << rows[i].ratio_min << " "
                   << rows[i].ratio_second;
        }
    }
    report(1, "eigenvalue table reproduction (n=4..7)", ok, detail.str());
}

void criterion_2() {
    bool ok = true;
    std::ostringstream detail;
    const auto s2 = full_spectrum(build_dense(2));
    if (!(s2.size() == 2 && close(s2[0], 1.0, 1e-10) && close(s2[1], 3.0, 1e-10))) {
        ok = false;
        detail << "L2 spectrum off; ";
    }
    const auto s3 = full_spectrum(build_dense(3));
    if (!close(s3.front(), 0.0, 1e-10)) {
        ok = false;
        detail << "L3 smallest not 0; ";
    }
    for (int n = 2; n <= 6 && ok; ++n) {
        const auto op = MatrixOperator::dense(build_dense(n));
        const std::vector<double> ones(op.dim(), 1.0);
        const auto y = op.apply(ones);
        const auto expect = static_cast<double>(total_lis(n));
        for (auto v : y)
            if (v != expect) {
                ok = false;
                detail << "matvec(E) not exactly total_lis at n=" << n;
                break;
            }
        const auto vals = full_spectrum(build_dense(n));
        if (!close(vals.back(), expect, 1e-7)) {
            ok = false;
            detail << "largest eigenvalue != total_lis at n=" << n;
        }
    }
    report(2, "small-case exact spectra", ok, detail.str());
}

void criterion_3() {
    bool ok = true;
    std::ostringstream detail;
    for (int n = 4; n <= 7; ++n) {
        const auto op = MatrixOperator::dense(build_dense(n));
        const auto ce = counterexample(n, op);
        const double predicted_gap = -ce.c * ce.c * ce.lambda_min;
        if (!(ce.expectation_p0 < ce.expectation_uniform && ce.gap > 1e-6 &&
              close(ce.gap, predicted_gap, 1e-8))) {
            ok = false;
            detail << "n=" << n << " gap=" << ce.gap << " predicted=" << predicted_gap << "; ";
            continue;
        }
        double min_w = 1.0, sum = 0.0;
        for (auto w : ce.p0.weights) {
            min_w = std::min(min_w, w);
            sum += w;
        }
        if (!(min_w >= 0.0 && close(sum, 1.0, 1e-12))) {
            ok = false;
            detail << "n=" << n << " invalid distribution; ";
            continue;
        }
        const auto mc = mc_expectation(ce.p0, 1'000'000, 2024);
        if (std::abs(mc.estimate - ce.expectation_p0) > 4.0 * mc.std_error) {
            ok = false;
            detail << "n=" << n << " MC estimate " << mc.estimate << " vs exact "
                   << ce.expectation_p0 << " (se " << mc.std_error << "); ";
        }
    }
    report(3, "counterexample gap for n=4..7 with Monte-Carlo confirmation", ok, detail.str());
}

void criterion_4() {
    bool ok = true;
    std::ostringstream detail;
    for (int n = 2; n <= 6; ++n) {
        const auto rep = verify_blocks(n);
        if (!rep.passed()) {
            ok = false;
            detail << "n=" << n << ": " << rep.witness << "; ";
        }
    }
    report(4, "block structure of L^(n+1) for n=2..6", ok, detail.str());
}

void criterion_5() {
    bool ok = true;
    std::ostringstream detail;
    for (int n = 2; n <= 5; ++n) {
        const auto rep = check_triple_product(n, true);
        if (!(rep.passed() && rep.slack == 0.0)) {
            ok = false;
            detail << "exhaustive n=" << n << " slack=" << rep.slack << "; ";
        }
    }
    for (int n : {6, 7}) {
        const auto rep = check_triple_product(n, false, 1'000'000, 1);
        if (!rep.passed()) {
            ok = false;
            detail << "sampled n=" << n << " violations=" << rep.violations << "; ";
        }
    }
    report(5, "triple-product lemma (exhaustive n<=5, sampled n=6,7)", ok, detail.str());
}

void criterion_6() {
    bool ok = true;
    std::ostringstream detail;
    for (int n = 2; n <= 8; ++n) {
        const auto rep = check_erdos_szekeres(n);
        const auto id = Permutation::identity(n);
        const auto rev = Permutation::reversed_identity(n);
        const bool id_tight = lcs_perm(id, id) * lcs_perm(rev, id) == n;
        const bool rev_tight = lcs_perm(id, rev) * lcs_perm(rev, rev) == n;
        if (!(rep.passed() && rep.slack == 0.0 && id_tight && rev_tight)) {
            ok = false;
            detail << "n=" << n << "; ";
        }
    }
    report(6, "Erdos-Szekeres specialization, exhaustive n=2..8", ok, detail.str());
}

void criterion_7() {
    bool ok = true;
    std::ostringstream detail;
    std::mt19937_64 rng(77);
    for (int n = 2; n <= 7 && ok; ++n) {
        const auto op = MatrixOperator::dense(build_dense(n));
        std::vector<Distribution> dists{Distribution::uniform(n), Distribution::point_mass(n, 0)};
        if (n >= 4) dists.push_back(counterexample(n, op).p0);
        for (int t = 0; t < 20; ++t) dists.push_back(random_distribution(n, rng));
        for (const auto& d : dists) {
            const auto rep = check_cubic_chain(d, op);
            if (!rep.passed()) {
                ok = false;
                detail << "n=" << n << " " << rep.witness << "; ";
                break;
            }
        }
    }
    report(7, "cube-root chain for uniform, point-mass, counterexample, random", ok, detail.str());
}

void criterion_8() {
    bool ok = true;
    std::ostringstream detail;
    {
        const auto op = MatrixOperator::dense(build_dense(3));
        OptimizerConfig cfg;
        cfg.restarts = 8;
        cfg.iters = 20000;
        cfg.tol = 1e-12;
        const auto run = minimize(3, cfg, op);
        for (auto v : run.restart_values)
            if (!close(v, 2.0, 1e-6)) {
                ok = false;
                detail << "n=3 restart value " << v << "; ";
            }
    }
    for (int n = 4; n <= 6 && ok; ++n) {
        const auto op = MatrixOperator::dense(build_dense(n));
        const auto ce_value = counterexample(n, op).expectation_p0;
        OptimizerConfig cfg;
        cfg.restarts = 8;
        cfg.iters = 3000;
        const auto run = minimize(n, cfg, op);
        const auto rep = conjecture_report(run, op);
        if (!(run.best_value <= ce_value + 1e-9 &&
              run.best_value >= std::cbrt(static_cast<double>(n)) - 1e-9 &&
              !rep.below_cbrt_bound)) {
            ok = false;
            detail << "n=" << n << " best=" << run.best_value << " ce=" << ce_value << "; ";
        }
    }
    report(8, "optimizer sanity (n=3 exact, n=4..6 bounded)", ok, detail.str());
}

void criterion_9() {
    bool ok = true;
    std::ostringstream detail;
    auto as_ints = [](const Permutation& p) {
        std::vector<int> v;
        for (auto x : p.entries()) v.push_back(x);
        return v;
    };
    for (int n = 1; n <= 5 && ok; ++n) {
        const auto perms = enumerate_all(n);
        for (const auto& a : perms) {
            for (const auto& b : perms) {
                if (lcs_perm(a, b) != lcs_dp(as_ints(a), as_ints(b))) {
                    ok = false;
                    detail << "mismatch at n=" << n << "; ";
                    break;
                }
            }
            if (!ok) break;
        }
    }
    std::mt19937_64 rng(9);
    for (int n = 6; n <= 10 && ok; ++n) {
        std::uniform_int_distribution<std::uint64_t> pick(0, factorial(n) - 1);
        for (int t = 0; t < 100'000; ++t) {
            const auto a = unrank(n, pick(rng));
            const auto b = unrank(n, pick(rng));
            if (lcs_perm(a, b) != lcs_dp(as_ints(a), as_ints(b))) {
                ok = false;
                detail << "mismatch at n=" << n << "; ";
                break;
            }
        }
    }
    report(9, "LIS-reduction LCS agrees with the DP oracle", ok, detail.str());
}

void criterion_10() {
    bool ok = true;
    std::ostringstream detail;
    const std::vector<std::vector<std::string>> cmds{
        {"sample", "--n", "5", "--dist", "counterexample", "--pairs", "50000", "--seed", "3",
         "--json"},
        {"table", "--n-max", "5", "--format", "json"},
        {"verify", "triple", "--n", "6", "--samples", "50000", "--seed", "11", "--json"},
        {"optimize", "--n", "4", "--restarts", "4", "--iters", "500", "--seed", "2", "--json"},
    };
    for (const auto& cmd : cmds) {
        std::ostringstream out1, out2, err;
        const int c1 = cli::run(cmd, out1, err);
        const int c2 = cli::run(cmd, out2, err);
        if (!(c1 == 0 && c2 == 0 && out1.str() == out2.str())) {
            ok = false;
            detail << cmd[0] << " not reproducible; ";
        }
    }
    report(10, "byte-identical JSON for identical argv and seed", ok, detail.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
