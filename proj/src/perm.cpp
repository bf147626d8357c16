#include "lcsq/perm.hpp"

#include <algorithm>

namespace lcsq {

namespace {

void validate(const std::vector<std::uint8_t>& entries) {
    const auto n = entries.size();
    if (n == 0) throw std::invalid_argument("permutation degree must be >= 1");
    if (n > 20) throw std::invalid_argument("permutation degree above supported limit (20)");
    std::vector<bool> seen(n, false);
    for (auto v : entries) {
        if (v < 1 || v > n || seen[v - 1])
            throw std::invalid_argument("entries are not a permutation of {1..n}");
        seen[v - 1] = true;
    }
}

}  // namespace

Permutation::Permutation(std::vector<std::uint8_t> entries) : entries_(std::move(entries)) {
    validate(entries_);
}

Permutation Permutation::identity(int n) {
    std::vector<std::uint8_t> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
    return Permutation(std::move(e));
}

Permutation Permutation::reversed_identity(int n) {
    std::vector<std::uint8_t> e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(n - i);
    return Permutation(std::move(e));
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("compose: degree mismatch");
    const int n = a.degree();
    std::vector<std::uint8_t> e(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) e[static_cast<std::size_t>(k)] = a[b[k] - 1];
    return Permutation(std::move(e));
}

Permutation inverse(const Permutation& a) {
    const int n = a.degree();
    std::vector<std::uint8_t> e(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) e[a[k] - 1] = static_cast<std::uint8_t>(k + 1);
    return Permutation(std::move(e));
}

Permutation reverse(const Permutation& a) {
    auto e = a.entries();
    std::reverse(e.begin(), e.end());
    return Permutation(std::move(e));
}

int lis_raw(const std::uint8_t* v, int n, std::uint8_t* tails) {
    int len = 0;
    for (int k = 0; k < n; ++k) {
        const std::uint8_t x = v[k];
        auto* pos = std::lower_bound(tails, tails + len, x);
        *pos = x;
        if (pos == tails + len) ++len;
    }
    return len;
}

int lis(const Permutation& a) {
    std::uint8_t tails[20];
    return lis_raw(a.entries().data(), a.degree(), tails);
}

int lcs_perm(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("lcs_perm: degree mismatch");
    std::uint8_t tmp[20], tails[20];
    const auto inv_a = inverse(a);
    return lcs_from_inverse(inv_a.entries().data(), b.entries().data(), a.degree(), tmp, tails);
}

int lcs_dp(std::span<const int> a, std::span<const int> b) {
    const std::size_t m = a.size(), n = b.size();
    std::vector<int> prev(n + 1, 0), cur(n + 1, 0);
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

std::uint64_t factorial(int n) {
    if (n < 0 || n > 20) throw std::invalid_argument("factorial: n out of range");
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::vector<Permutation> enumerate_all(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_all: n must be >= 1");
    if (n > 8) throw std::invalid_argument("enumerate_all: n > 8 would not fit in memory; use unrank");
    std::vector<std::vector<std::uint8_t>> cur{{1}};
    for (int k = 1; k < n; ++k) {
        // k+1 trunks: trunk t inserts the value k+1 at position k-t, so the
        // first trunk appends and the last prepends.
        std::vector<std::vector<std::uint8_t>> next;
        next.reserve(cur.size() * static_cast<std::size_t>(k + 1));
        for (int trunk = 0; trunk <= k; ++trunk) {
            for (const auto& base : cur) {
                auto e = base;
                e.insert(e.begin() + (k - trunk), static_cast<std::uint8_t>(k + 1));
                next.push_back(std::move(e));
            }
        }
        cur = std::move(next);
    }
    std::vector<Permutation> out;
    out.reserve(cur.size());
    for (auto& e : cur) out.emplace_back(std::move(e));
    return out;
}

Permutation unrank(int n, std::uint64_t index) {
    if (n < 1) throw std::invalid_argument("unrank: n must be >= 1");
    if (index >= factorial(n)) throw std::invalid_argument("unrank: index out of range");
    std::vector<std::uint8_t> e{1};
    // Peel trunk digits top-down, then rebuild by inserting 2..n.
    std::vector<int> trunks(static_cast<std::size_t>(n), 0);
    for (int k = n; k >= 2; --k) {
        const std::uint64_t f = factorial(k - 1);
        trunks[static_cast<std::size_t>(k - 1)] = static_cast<int>(index / f);
        index %= f;
    }
    for (int k = 1; k < n; ++k) {
        const int trunk = trunks[static_cast<std::size_t>(k)];
        e.insert(e.begin() + (k - trunk), static_cast<std::uint8_t>(k + 1));
    }
    return Permutation(std::move(e));
}

std::uint64_t rank_of(const Permutation& a) {
    auto e = a.entries();
    std::uint64_t r = 0;
    for (int k = static_cast<int>(e.size()); k >= 2; --k) {
        const auto it = std::find(e.begin(), e.end(), static_cast<std::uint8_t>(k));
        const int pos = static_cast<int>(it - e.begin());
        const int trunk = (k - 1) - pos;
        r += static_cast<std::uint64_t>(trunk) * factorial(k - 1);
        e.erase(it);
    }
    return r;
}

}  // namespace lcsq
