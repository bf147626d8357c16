#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "lcsq/perm.hpp"
#include "lcsq/report.hpp"

namespace lcsq {

/// Dense n! x n! matrix of pairwise permutation LCS lengths, rows/columns
/// ordered by the canonical trunk enumeration. Entries fit in one byte.
struct LcsMatrix {
    int n = 0;
    std::size_t dim = 0;
    std::vector<std::uint8_t> entries;  // row-major, dim*dim

    std::uint8_t at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
};

inline constexpr int kDenseLimit = 7;

/// Build the full matrix, OpenMP-parallel over rows. n=8 needs ~1.6 GB and is
/// only allowed with allow_big.
LcsMatrix build_dense(int n, bool allow_big = false);

/// Serial reference build, kept for testing and benchmarking.
LcsMatrix build_dense_serial(int n, bool allow_big = false);

/// Sum of LIS over all of S_n; every row of the matrix sums to this.
std::uint64_t total_lis(int n);

/// Either holds the dense matrix or recomputes rows on the fly (for n where
/// dense storage is infeasible). Both forms apply the same linear map.
class MatrixOperator {
public:
    static MatrixOperator dense(LcsMatrix m);
    static MatrixOperator matrix_free(int n);

    int n() const { return n_; }
    std::size_t dim() const { return dim_; }
    bool is_dense() const { return matrix_ != nullptr; }
    const LcsMatrix& matrix() const;

    std::vector<double> apply(std::span<const double> v) const;
    std::vector<double> apply_serial(std::span<const double> v) const;

private:
    MatrixOperator() = default;

    int n_ = 0;
    std::size_t dim_ = 0;
    std::shared_ptr<const LcsMatrix> matrix_;
    // matrix-free state: one-line forms and inverses, 8*dim bytes each
    std::vector<std::uint8_t> oneline_;
    std::vector<std::uint8_t> inv_;
};

/// Check the four asserted blocks of L^(n+1): top-left and bottom-right equal
/// L^(n)+J, bottom-left and top-right equal L^(n). The middle trunk blocks are
/// deliberately not checked.
VerificationReport verify_blocks(int n);
VerificationReport verify_blocks_against(const LcsMatrix& small, const LcsMatrix& big);

/// Byte-exact file format: "LCSM", version byte 1, degree byte, two zero
/// bytes, then dim*dim entry bytes row-major.
void save(const LcsMatrix& m, const std::filesystem::path& path);
LcsMatrix load(const std::filesystem::path& path);

}  // namespace lcsq
