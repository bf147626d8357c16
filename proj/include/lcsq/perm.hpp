#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace lcsq {

/// Permutation of [n] in one-line notation. Values are 1-based.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<std::uint8_t> entries);

    static Permutation identity(int n);
    static Permutation reversed_identity(int n);

    int degree() const { return static_cast<int>(entries_.size()); }

    /// Value at 0-based position i (the value itself is 1-based).
    std::uint8_t operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

    const std::vector<std::uint8_t>& entries() const { return entries_; }

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::uint8_t> entries_;
};

Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);
Permutation reverse(const Permutation& a);

/// Length of the longest strictly increasing subsequence (patience sorting).
int lis(const Permutation& a);

/// LCS of two permutations via the LIS reduction: LCS(a,b) = LIS(a^{-1} b).
int lcs_perm(const Permutation& a, const Permutation& b);

/// Generic quadratic-DP LCS on integer sequences. Kept as an independent
/// cross-check; lcs_perm never calls it.
int lcs_dp(std::span<const int> a, std::span<const int> b);

std::uint64_t factorial(int n);

/// All n! permutations in the canonical trunk ordering (n <= 8).
std::vector<Permutation> enumerate_all(int n);

/// Permutation at `index` of the canonical ordering, without materializing S_n.
Permutation unrank(int n, std::uint64_t index);

/// Position of `a` in the canonical ordering; two-sided inverse of unrank.
std::uint64_t rank_of(const Permutation& a);

// ---- hot-path kernels (raw buffers, no allocation) ----

/// LIS of the n values in v. tails must hold at least n bytes of scratch.
int lis_raw(const std::uint8_t* v, int n, std::uint8_t* tails);

/// LCS(a,b) given inv_a = a^{-1} in one-line form. tmp and tails are n-byte
/// scratch buffers.
inline int lcs_from_inverse(const std::uint8_t* inv_a, const std::uint8_t* b, int n,
                            std::uint8_t* tmp, std::uint8_t* tails) {
    for (int k = 0; k < n; ++k) tmp[k] = inv_a[b[k] - 1];
    return lis_raw(tmp, n, tails);
}

}  // namespace lcsq
