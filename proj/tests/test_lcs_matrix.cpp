#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "lcsq/lcs_matrix.hpp"

using namespace lcsq;

TEST_CASE("build_dense small cases") {
    const auto l2 = build_dense(2);
    REQUIRE(l2.dim == 2);
    CHECK(l2.at(0, 0) == 2);
    CHECK(l2.at(0, 1) == 1);
    CHECK(l2.at(1, 0) == 1);
    CHECK(l2.at(1, 1) == 2);

    const auto l3 = build_dense(3);
    for (std::size_t i = 0; i < l3.dim; ++i) {
        std::uint64_t row_sum = 0;
        for (std::size_t j = 0; j < l3.dim; ++j) row_sum += l3.at(i, j);
        CHECK(row_sum == 12);
    }
}

TEST_CASE("entry bounds, symmetry, diagonal") {
    for (int n : {2, 3, 4, 5}) {
        const auto m = build_dense(n);
        for (std::size_t i = 0; i < m.dim; ++i) {
            CHECK(m.at(i, i) == n);
            for (std::size_t j = 0; j < m.dim; ++j) {
                CHECK(m.at(i, j) == m.at(j, i));
                CHECK(m.at(i, j) >= 1);
                CHECK(m.at(i, j) <= n);
            }
        }
    }
}

TEST_CASE("serial build matches parallel build") {
    for (int n : {3, 5}) {
        const auto a = build_dense(n);
        const auto b = build_dense_serial(n);
        CHECK(a.entries == b.entries);
    }
}

TEST_CASE("principal block of L4 is L3 plus ones") {
    const auto l3 = build_dense(3);
    const auto l4 = build_dense(4);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(static_cast<int>(l4.at(i, j)) == static_cast<int>(l3.at(i, j)) + 1);
}

TEST_CASE("total_lis") {
    CHECK(total_lis(2) == 3);
    CHECK(total_lis(3) == 12);
    // brute-force over S_4 via the enumeration
    std::uint64_t sum4 = 0;
    for (const auto& p : enumerate_all(4)) sum4 += static_cast<std::uint64_t>(lis(p));
    CHECK(total_lis(4) == sum4);
    const auto l4 = build_dense(4);
    std::uint64_t row0 = 0;
    for (std::size_t j = 0; j < l4.dim; ++j) row0 += l4.at(0, j);
    CHECK(row0 == total_lis(4));
}

TEST_CASE("matvec on the all-ones vector") {
    for (int n : {2, 3, 4, 5}) {
        const auto op = MatrixOperator::dense(build_dense(n));
        const std::vector<double> ones(op.dim(), 1.0);
        const auto y = op.apply(ones);
        const auto expect = static_cast<double>(total_lis(n));
        for (auto v : y) CHECK(v == expect);  // exact integer arithmetic in double

        const std::vector<double> zero(op.dim(), 0.0);
        for (auto v : op.apply(zero)) CHECK(v == 0.0);
    }
}

TEST_CASE("dense and matrix-free matvec agree") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {2, 3, 4, 5}) {
        const auto dense = MatrixOperator::dense(build_dense(n));
        const auto free_op = MatrixOperator::matrix_free(n);
        std::vector<double> v(dense.dim());
        for (auto& x : v) x = u(rng);
        const auto a = dense.apply(v);
        const auto b = free_op.apply(v);
        const auto c = dense.apply_serial(v);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
            CHECK(a[i] == doctest::Approx(c[i]).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(MatrixOperator::matrix_free(5).apply(std::vector<double>(3)),
                    std::invalid_argument);
}

TEST_CASE("verify_blocks") {
    CHECK(verify_blocks(2).passed());
    CHECK(verify_blocks(3).passed());

    auto small = build_dense(3);
    auto big = build_dense(4);
    big.entries[5] ^= 1;  // corrupt one top-left entry
    const auto rep = verify_blocks_against(small, big);
    CHECK_FALSE(rep.passed());
    CHECK(rep.witness.find("top-left") != std::string::npos);
}

TEST_CASE("save and load round-trip") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "lcsq_test_m4.lcsm";
    const auto m = build_dense(4);
    save(m, path);
    const auto back = load(path);
    CHECK(back.n == 4);
    CHECK(back.dim == 24);
    CHECK(back.entries == m.entries);

    const auto m5 = build_dense(5);
    const auto path5 = dir / "lcsq_test_m5.lcsm";
    save(m5, path5);
    CHECK(load(path5).dim == 120);

    // truncated file
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << "LCSM";
    const char hdr[4] = {1, 4, 0, 0};
    f.write(hdr, 4);
    f << "short";
    f.close();
    CHECK_THROWS_AS(load(path), std::runtime_error);

    std::filesystem::remove(path);
    std::filesystem::remove(path5);
}

TEST_CASE("dense limit guard") {
    CHECK_THROWS_AS(build_dense(8), std::invalid_argument);
    CHECK_THROWS_AS(build_dense(9, true), std::invalid_argument);
}
