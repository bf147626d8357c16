#include <cmath>
#include <numeric>

#include "doctest.h"
#include "lcsq/spectra.hpp"

using namespace lcsq;

TEST_CASE("full spectrum of the 2x2 and 6x6 matrices") {
    const auto s2 = full_spectrum(build_dense(2));
    REQUIRE(s2.size() == 2);
    CHECK(s2[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s2[1] == doctest::Approx(3.0).epsilon(1e-12));

    const auto s3 = full_spectrum(build_dense(3));
    REQUIRE(s3.size() == 6);
    CHECK(std::abs(s3.front()) < 1e-10);
    CHECK(s3.back() == doctest::Approx(12.0).epsilon(1e-10));
}

TEST_CASE("trace and largest-eigenvalue checks") {
    for (int n : {2, 3, 4, 5, 6}) {
        const auto m = build_dense(n);
        const auto vals = full_spectrum(m);
        const double trace = std::accumulate(vals.begin(), vals.end(), 0.0);
        CHECK(trace == doctest::Approx(static_cast<double>(n) * static_cast<double>(m.dim))
                           .epsilon(1e-9));
        CHECK(vals.back() == doctest::Approx(static_cast<double>(total_lis(n))).epsilon(1e-9));
        for (auto v : vals) CHECK(std::abs(v) <= static_cast<double>(total_lis(n)) + 1e-8);
    }
    CHECK_THROWS_AS(full_spectrum(build_dense(7)), std::invalid_argument);
}

TEST_CASE("extreme_eigen basics") {
    const auto op2 = MatrixOperator::dense(build_dense(2));
    const auto top = extreme_eigen(op2, Which::largest);
    CHECK(top.value == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(top.vector[0] == doctest::Approx(top.vector[1]).epsilon(1e-10));

    const auto op4 = MatrixOperator::dense(build_dense(4));
    CHECK(extreme_eigen(op4, Which::smallest).value == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(extreme_eigen(op4, Which::second_largest).value ==
          doctest::Approx(6.6055).epsilon(1e-3));
}

TEST_CASE("extreme_eigen matches the full spectrum for n <= 5") {
    for (int n : {2, 3, 4, 5}) {
        const auto m = build_dense(n);
        const auto vals = full_spectrum(m);
        const auto op = MatrixOperator::dense(m);
        const auto lo = extreme_eigen(op, Which::smallest);
        const auto second = extreme_eigen(op, Which::second_largest);
        const auto hi = extreme_eigen(op, Which::largest);
        CHECK(lo.value == doctest::Approx(vals.front()).epsilon(1e-8));
        CHECK(second.value == doctest::Approx(vals[vals.size() - 2]).epsilon(1e-8));
        CHECK(hi.value == doctest::Approx(vals.back()).epsilon(1e-8));

        // residuals and normalization
        for (const auto* p : {&lo, &second, &hi}) {
            double nrm = 0.0, dot_e = 0.0;
            for (auto x : p->vector) {
                nrm += x * x;
                dot_e += x;
            }
            CHECK(std::sqrt(nrm) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(p->residual <= 1e-8 * std::max(1.0, std::abs(p->value)));
            if (p != &hi) CHECK(std::abs(dot_e) < 1e-8);
        }

        // top eigenvector is (numerically) a multiple of E
        const double unit = 1.0 / std::sqrt(static_cast<double>(op.dim()));
        for (auto x : hi.vector) CHECK(std::abs(x - unit) < 1e-8);
    }
}

TEST_CASE("spectral summary reproduces the reported values") {
    const auto s5 = spectral_summary(5);
    CHECK(s5.lambda_min == doctest::Approx(-5.0835).epsilon(1e-3));
    CHECK(s5.lambda_second_max == doctest::Approx(30.0293).epsilon(1e-3));
    CHECK(s5.lambda_max == doctest::Approx(static_cast<double>(total_lis(5))).epsilon(1e-8));

    const auto s6 = spectral_summary(6);
    CHECK(s6.lambda_min == doctest::Approx(-20.2413).epsilon(1e-3));
    CHECK(s6.lambda_second_max == doctest::Approx(166.1372).epsilon(1e-3));
}

TEST_CASE("bottom eigenvalue chain decreases strictly") {
    double prev = 2.0;
    for (int n = 2; n <= 6; ++n) {
        const auto s = spectral_summary(n);
        CHECK(s.lambda_min < prev - 1e-9);
        prev = s.lambda_min;
    }
}

TEST_CASE("doubling bounds from the two growth propositions") {
    double prev_min = 0.0, prev_second = 0.0;
    for (int n = 4; n <= 6; ++n) {
        const auto s = spectral_summary(n);
        if (n > 4) {
            CHECK(s.lambda_min <= 2.0 * prev_min + 1e-6);
            CHECK(s.lambda_second_max >= 2.0 * prev_second - 1e-6);
        }
        prev_min = s.lambda_min;
        prev_second = s.lambda_second_max;
    }
}

TEST_CASE("ratio table rows") {
    const auto rows = ratio_table(6);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].n == 4);
    CHECK(rows[0].ratio_min == 1.0);
    CHECK(rows[1].ratio_min == doctest::Approx(2.5417).epsilon(5e-3));
    CHECK(rows[2].ratio_min == doctest::Approx(3.9817).epsilon(5e-3));
    CHECK(rows[1].ratio_second == doctest::Approx(4.5460).epsilon(5e-3));
    CHECK_THROWS_AS(ratio_table(3), std::invalid_argument);
}

TEST_CASE("tridiagonal eigensolver") {
    // [[2,1],[1,2]] has eigenvalues 1 and 3
    std::vector<std::vector<double>> vecs;
    const auto vals = tridiag_eigen({2.0, 2.0}, {1.0}, &vecs);
    CHECK(vals[0] == doctest::Approx(1.0));
    CHECK(vals[1] == doctest::Approx(3.0));
    CHECK(std::abs(vecs[0][0] + vecs[0][1]) < 1e-12);
}
