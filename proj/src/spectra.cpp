#include "lcsq/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

extern "C" {
void dstev_(const char* jobz, const int* n, double* d, double* e, double* z, const int* ldz,
            double* work, int* info);
void dsyev_(const char* jobz, const char* uplo, const int* n, double* a, const int* lda, double* w,
            double* work, const int* lwork, int* info);
}

namespace lcsq {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double c, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

void scale(double c, std::vector<double>& x) {
    for (auto& v : x) v *= c;
}

// projection onto the complement of the all-ones direction
void project_out_ones(std::vector<double>& v) {
    double m = 0.0;
    for (auto x : v) m += x;
    m /= static_cast<double>(v.size());
    for (auto& x : v) x -= m;
}

void fix_sign(std::vector<double>& v) {
    for (auto x : v) {
        if (std::abs(x) > 1e-10) {
            if (x < 0.0) scale(-1.0, v);
            return;
        }
    }
}

}  // namespace

std::vector<double> tridiag_eigen(std::vector<double> diag, std::vector<double> offdiag,
                                  std::vector<std::vector<double>>* vectors) {
    const int n = static_cast<int>(diag.size());
    if (n == 0) throw std::invalid_argument("tridiag_eigen: empty matrix");
    if (offdiag.size() + 1 != diag.size())
        throw std::invalid_argument("tridiag_eigen: offdiag size must be n-1");
    offdiag.resize(diag.size());  // LAPACK wants length >= n-1; keep a slot spare
    std::vector<double> z(vectors ? static_cast<std::size_t>(n) * n : 1, 0.0);
    std::vector<double> work(std::max(1, 2 * n - 2));
    const char jobz = vectors ? 'V' : 'N';
    int info = 0;
    const int ldz = std::max(1, n);
    dstev_(&jobz, &n, diag.data(), offdiag.data(), z.data(), &ldz, work.data(), &info);
    if (info != 0) throw std::runtime_error("dstev failed, info=" + std::to_string(info));
    if (vectors) {
        vectors->assign(static_cast<std::size_t>(n), std::vector<double>(n));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                (*vectors)[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
                    z[static_cast<std::size_t>(k) * n + i];
    }
    return diag;
}

EigenPair extreme_eigen(const MatrixOperator& op, Which which, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("extreme_eigen: tol must be positive");
    const std::size_t dim = op.dim();
    const bool deflate = which != Which::largest;
    if (dim == 1) {
        if (deflate) throw std::invalid_argument("extreme_eigen: no E-orthogonal subspace at dim 1");
        std::vector<double> e{1.0};
        const double val = op.apply(e)[0];
        return {val, std::move(e), 0.0, 0};
    }
    const std::size_t subspace = deflate ? dim - 1 : dim;
    std::size_t cap = static_cast<std::size_t>(50.0 * std::sqrt(static_cast<double>(dim))) + 2;
    cap = std::min(cap, subspace);

    std::mt19937_64 rng(0x1c55eedULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v0(dim);
    for (auto& x : v0) x = u(rng);
    if (deflate) project_out_ones(v0);
    scale(1.0 / norm(v0), v0);

    std::vector<std::vector<double>> basis{v0};
    std::vector<double> alpha, beta;
    std::vector<double> ritz_vals;
    std::vector<std::vector<double>> ritz_vecs;
    std::size_t m = 0;
    std::size_t target = 0;
    bool converged = false;
    double last_res_est = 0.0;

    for (std::size_t j = 0; j < cap; ++j) {
        auto w = op.apply(basis[j]);
        if (deflate) project_out_ones(w);
        const double a_j = dot(w, basis[j]);
        alpha.push_back(a_j);
        axpy(-a_j, basis[j], w);
        if (j > 0) axpy(-beta[j - 1], basis[j - 1], w);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) axpy(-dot(w, q), q, w);
        const double b_j = norm(w);

        ritz_vals = tridiag_eigen(alpha, beta, &ritz_vecs);
        target = (which == Which::smallest) ? 0 : j;
        const double theta = ritz_vals[target];
        last_res_est = b_j * std::abs(ritz_vecs[target][j]);
        m = j + 1;
        if (last_res_est <= tol * std::max(1.0, std::abs(theta)) || b_j < 1e-12 ||
            m == subspace) {
            converged = true;
            break;
        }
        beta.push_back(b_j);
        scale(1.0 / b_j, w);
        basis.push_back(std::move(w));
    }
    if (!converged) {
        std::ostringstream os;
        os << "extreme_eigen: no convergence in " << cap
           << " iterations, last residual estimate " << last_res_est;
        throw std::runtime_error(os.str());
    }

    EigenPair out;
    out.value = ritz_vals[target];
    out.iterations = static_cast<int>(m);
    out.vector.assign(dim, 0.0);
    for (std::size_t i = 0; i < m; ++i) axpy(ritz_vecs[target][i], basis[i], out.vector);
    scale(1.0 / norm(out.vector), out.vector);
    fix_sign(out.vector);

    auto lv = op.apply(out.vector);
    axpy(-out.value, out.vector, lv);
    out.residual = norm(lv);
    return out;
}

std::vector<double> full_spectrum(const LcsMatrix& m) {
    if (m.n > 6) throw std::invalid_argument("full_spectrum: dense spectrum limited to n <= 6");
    const int n = static_cast<int>(m.dim);
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < m.dim; ++i)
        for (std::size_t j = 0; j < m.dim; ++j)
            a[j * m.dim + i] = static_cast<double>(m.at(i, j));
    std::vector<double> w(static_cast<std::size_t>(n));
    int info = 0;
    int lwork = -1;
    double wkopt = 0.0;
    const char jobz = 'N', uplo = 'U';
    dsyev_(&jobz, &uplo, &n, a.data(), &n, w.data(), &wkopt, &lwork, &info);
    lwork = static_cast<int>(wkopt);
    std::vector<double> work(static_cast<std::size_t>(std::max(1, lwork)));
    dsyev_(&jobz, &uplo, &n, a.data(), &n, w.data(), work.data(), &lwork, &info);
    if (info != 0) throw std::runtime_error("dsyev failed, info=" + std::to_string(info));
    return w;
}

SpectralSummary spectral_summary(const MatrixOperator& op, double tol) {
    SpectralSummary s;
    s.n = op.n();
    s.tol = tol;
    auto lo = extreme_eigen(op, Which::smallest, tol);
    auto second = extreme_eigen(op, Which::second_largest, tol);
    auto hi = extreme_eigen(op, Which::largest, tol);
    s.lambda_min = lo.value;
    s.lambda_second_max = second.value;
    s.lambda_max = hi.value;
    s.r_min = std::move(lo.vector);
    s.residual_min = lo.residual;
    s.residual_second = second.residual;
    s.residual_max = hi.residual;
    return s;
}

SpectralSummary spectral_summary(int n, double tol, bool allow_big) {
    if (n < 2) throw std::invalid_argument("spectral_summary: n must be >= 2");
    if (n <= kDenseLimit) return spectral_summary(MatrixOperator::dense(build_dense(n)), tol);
    if (n == kDenseLimit + 1) {
        if (allow_big) return spectral_summary(MatrixOperator::dense(build_dense(n, true)), tol);
        return spectral_summary(MatrixOperator::matrix_free(n), tol);
    }
    throw std::invalid_argument("spectral_summary: n above supported limit");
}

nlohmann::json SpectralSummary::to_json(bool include_vector) const {
    nlohmann::json j{{"n", n},
                     {"lambda_min", lambda_min},
                     {"lambda_second_max", lambda_second_max},
                     {"lambda_max", lambda_max},
                     {"residual_min", residual_min},
                     {"residual_second", residual_second},
                     {"residual_max", residual_max},
                     {"tolerance", tol}};
    if (include_vector) j["r_min"] = r_min;
    return j;
}

nlohmann::json RatioRow::to_json() const {
    return {{"n", n},
            {"lambda_min", lambda_min},
            {"ratio_min", ratio_min},
            {"lambda_second_max", lambda_second},
            {"ratio_second_max", ratio_second}};
}

std::vector<RatioRow> ratio_table(int n_max, double tol, bool allow_big) {
    if (n_max < 4 || n_max > kDenseLimit + 1)
        throw std::invalid_argument("ratio_table: n_max must be in [4,8]");
    std::vector<RatioRow> rows;
    double prev_min = 0.0, prev_second = 0.0;
    for (int n = 4; n <= n_max; ++n) {
        const auto s = spectral_summary(n, tol, allow_big);
        RatioRow r;
        r.n = n;
        r.lambda_min = s.lambda_min;
        r.lambda_second = s.lambda_second_max;
        // first row is the table's baseline; later rows divide by the row above
        r.ratio_min = (n == 4) ? 1.0 : s.lambda_min / prev_min;
        r.ratio_second = (n == 4) ? 1.0 : s.lambda_second_max / prev_second;
        prev_min = s.lambda_min;
        prev_second = s.lambda_second_max;
        rows.push_back(r);
    }
    return rows;
}

std::string ratio_table_csv(const std::vector<RatioRow>& rows) {
    std::ostringstream os;
    os << "n,lambda_min,ratio_min,lambda_second_max,ratio_second_max\n";
    os << std::fixed << std::setprecision(6);
    for (const auto& r : rows)
        os << r.n << ',' << r.lambda_min << ',' << r.ratio_min << ',' << r.lambda_second << ','
           << r.ratio_second << '\n';
    return os.str();
}

std::string ratio_table_text(const std::vector<RatioRow>& rows) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    os << "  n   lambda_min      ratio   lambda_2nd_max      ratio\n";
    for (const auto& r : rows) {
        os << std::setw(3) << r.n << std::setw(13) << r.lambda_min << std::setw(11) << r.ratio_min
           << std::setw(17) << r.lambda_second << std::setw(11) << r.ratio_second << '\n';
    }
    return os.str();
}

}  // namespace lcsq
