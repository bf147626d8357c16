#include "lcsq/lcs_matrix.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace lcsq {

namespace {

struct FlatEnumeration {
    int n;
    std::size_t dim;
    std::vector<std::uint8_t> oneline;  // dim * n
    std::vector<std::uint8_t> inv;      // dim * n
};

FlatEnumeration flatten(int n) {
    const auto perms = enumerate_all(n);
    FlatEnumeration fe;
    fe.n = n;
    fe.dim = perms.size();
    fe.oneline.resize(fe.dim * static_cast<std::size_t>(n));
    fe.inv.resize(fe.dim * static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < fe.dim; ++i) {
        const auto& e = perms[i].entries();
        const auto invp = inverse(perms[i]).entries();
        std::memcpy(&fe.oneline[i * static_cast<std::size_t>(n)], e.data(), e.size());
        std::memcpy(&fe.inv[i * static_cast<std::size_t>(n)], invp.data(), invp.size());
    }
    return fe;
}

void check_build_limits(int n, bool allow_big) {
    if (n < 1) throw std::invalid_argument("build_dense: n must be >= 1");
    if (n > kDenseLimit + 1)
        throw std::invalid_argument("build_dense: n above dense limit");
    if (n == kDenseLimit + 1 && !allow_big)
        throw std::invalid_argument(
            "build_dense: n=8 needs ~1.6 GB, pass allow_big to confirm");
}

template <bool Parallel>
LcsMatrix build_impl(int n, bool allow_big) {
    check_build_limits(n, allow_big);
    const auto fe = flatten(n);
    LcsMatrix m;
    m.n = n;
    m.dim = fe.dim;
    m.entries.assign(m.dim * m.dim, 0);
    const std::size_t dim = m.dim;
    const auto nn = static_cast<std::size_t>(n);

    // upper triangle only; each (i,j) write and its (j,i) mirror are unique
#pragma omp parallel for schedule(dynamic, 16) if (Parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(dim); ++i) {
        std::uint8_t tmp[20], tails[20];
        const std::uint8_t* inv_i = &fe.inv[static_cast<std::size_t>(i) * nn];
        const auto ui = static_cast<std::size_t>(i);
        m.entries[ui * dim + ui] = static_cast<std::uint8_t>(n);
        for (std::size_t j = ui + 1; j < dim; ++j) {
            const auto v = static_cast<std::uint8_t>(
                lcs_from_inverse(inv_i, &fe.oneline[j * nn], n, tmp, tails));
            m.entries[ui * dim + j] = v;
            m.entries[j * dim + ui] = v;
        }
    }
    return m;
}

}  // namespace

LcsMatrix build_dense(int n, bool allow_big) { return build_impl<true>(n, allow_big); }
LcsMatrix build_dense_serial(int n, bool allow_big) { return build_impl<false>(n, allow_big); }

std::uint64_t total_lis(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("total_lis: n must be in [1,8]");
    std::uint64_t sum = 0;
    for (const auto& p : enumerate_all(n)) sum += static_cast<std::uint64_t>(lis(p));
    return sum;
}

MatrixOperator MatrixOperator::dense(LcsMatrix m) {
    MatrixOperator op;
    op.n_ = m.n;
    op.dim_ = m.dim;
    op.matrix_ = std::make_shared<const LcsMatrix>(std::move(m));
    return op;
}

MatrixOperator MatrixOperator::matrix_free(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("matrix_free: n must be in [1,8]");
    MatrixOperator op;
    auto fe = flatten(n);
    op.n_ = n;
    op.dim_ = fe.dim;
    op.oneline_ = std::move(fe.oneline);
    op.inv_ = std::move(fe.inv);
    return op;
}

const LcsMatrix& MatrixOperator::matrix() const {
    if (!matrix_) throw std::logic_error("MatrixOperator: no dense matrix attached");
    return *matrix_;
}

namespace {

template <bool Parallel>
std::vector<double> apply_dense(const LcsMatrix& m, std::span<const double> v) {
    const std::size_t dim = m.dim;
    std::vector<double> y(dim, 0.0);
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(dim); ++i) {
        const std::uint8_t* row = &m.entries[static_cast<std::size_t>(i) * dim];
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) acc += static_cast<double>(row[j]) * v[j];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

template <bool Parallel>
std::vector<double> apply_free(int n, std::size_t dim, const std::vector<std::uint8_t>& oneline,
                               const std::vector<std::uint8_t>& inv, std::span<const double> v) {
    const auto nn = static_cast<std::size_t>(n);
    std::vector<double> y(dim, 0.0);
#pragma omp parallel for schedule(dynamic, 8) if (Parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(dim); ++i) {
        std::uint8_t tmp[20], tails[20];
        const std::uint8_t* inv_i = &inv[static_cast<std::size_t>(i) * nn];
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
            acc += static_cast<double>(lcs_from_inverse(inv_i, &oneline[j * nn], n, tmp, tails)) *
                   v[j];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

}  // namespace

std::vector<double> MatrixOperator::apply(std::span<const double> v) const {
    if (v.size() != dim_) throw std::invalid_argument("matvec: vector length mismatch");
    if (matrix_) return apply_dense<true>(*matrix_, v);
    return apply_free<true>(n_, dim_, oneline_, inv_, v);
}

std::vector<double> MatrixOperator::apply_serial(std::span<const double> v) const {
    if (v.size() != dim_) throw std::invalid_argument("matvec: vector length mismatch");
    if (matrix_) return apply_dense<false>(*matrix_, v);
    return apply_free<false>(n_, dim_, oneline_, inv_, v);
}

VerificationReport verify_blocks_against(const LcsMatrix& small, const LcsMatrix& big) {
    VerificationReport rep;
    rep.claim = "block-structure";
    rep.n = small.n;
    rep.mode = VerificationReport::Mode::exhaustive;
    const std::size_t d = small.dim;
    if (big.dim < d || big.n != small.n + 1)
        throw std::invalid_argument("verify_blocks: matrices are not consecutive degrees");
    const std::size_t off = big.dim - d;  // start of the last trunk

    struct Block {
        const char* name;
        std::size_t r0, c0;
        int add;  // 0 for L, 1 for L+J
    };
    const Block blocks[] = {{"top-left", 0, 0, 1},
                            {"bottom-right", off, off, 1},
                            {"bottom-left", off, 0, 0},
                            {"top-right", 0, off, 0}};
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                ++rep.cases;
                const int expect = static_cast<int>(small.at(i, j)) + b.add;
                const int got = static_cast<int>(big.at(b.r0 + i, b.c0 + j));
                if (got != expect && rep.violations++ == 0) {
                    std::ostringstream os;
                    os << b.name << " block (" << i << "," << j << "): expected " << expect
                       << ", got " << got;
                    rep.witness = os.str();
                }
            }
        }
    }
    if (rep.violations == 0) rep.witness = "all four blocks match";
    return rep;
}

VerificationReport verify_blocks(int n) {
    const auto small = build_dense(n);
    const auto big = build_dense(n + 1);
    return verify_blocks_against(small, big);
}

namespace {
constexpr char kMagic[4] = {'L', 'C', 'S', 'M'};
constexpr std::uint8_t kVersion = 1;
}  // namespace

void save(const LcsMatrix& m, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save: cannot open " + path.string());
    f.write(kMagic, 4);
    const std::uint8_t hdr[4] = {kVersion, static_cast<std::uint8_t>(m.n), 0, 0};
    f.write(reinterpret_cast<const char*>(hdr), 4);
    f.write(reinterpret_cast<const char*>(m.entries.data()),
            static_cast<std::streamsize>(m.entries.size()));
    if (!f) throw std::runtime_error("save: write failed for " + path.string());
}

LcsMatrix load(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load: cannot open " + path.string());
    char magic[4];
    std::uint8_t hdr[4];
    f.read(magic, 4);
    f.read(reinterpret_cast<char*>(hdr), 4);
    if (!f || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load: bad magic in " + path.string());
    if (hdr[0] != kVersion) throw std::runtime_error("load: unsupported format version");
    if (hdr[2] != 0 || hdr[3] != 0) throw std::runtime_error("load: nonzero reserved bytes");
    LcsMatrix m;
    m.n = hdr[1];
    if (m.n < 1 || m.n > kDenseLimit + 1) throw std::runtime_error("load: degree out of range");
    m.dim = factorial(m.n);
    m.entries.resize(m.dim * m.dim);
    f.read(reinterpret_cast<char*>(m.entries.data()),
           static_cast<std::streamsize>(m.entries.size()));
    if (f.gcount() != static_cast<std::streamsize>(m.entries.size()))
        throw std::runtime_error("load: truncated file " + path.string());
    return m;
}

}  // namespace lcsq
