#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lcsq/lcs_matrix.hpp"

namespace lcsq {

enum class Which { smallest, second_largest, largest };

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;
    double residual = 0.0;
    int iterations = 0;
};

/// Extreme eigenpair by Lanczos with full reorthogonalization. For smallest
/// and second_largest the all-ones direction is deflated (every iterate is
/// projected onto its orthogonal complement), which restricts the search to
/// the invariant subspace orthogonal to E.
EigenPair extreme_eigen(const MatrixOperator& op, Which which, double tol = 1e-10);

/// All eigenvalues, ascending. Dense path only, n <= 6.
std::vector<double> full_spectrum(const LcsMatrix& m);

struct SpectralSummary {
    int n = 0;
    double lambda_min = 0.0;
    double lambda_second_max = 0.0;
    double lambda_max = 0.0;
    std::vector<double> r_min;
    double residual_min = 0.0;
    double residual_second = 0.0;
    double residual_max = 0.0;
    double tol = 0.0;

    nlohmann::json to_json(bool include_vector = false) const;
};

SpectralSummary spectral_summary(int n, double tol = 1e-10, bool allow_big = false);
SpectralSummary spectral_summary(const MatrixOperator& op, double tol = 1e-10);

struct RatioRow {
    int n = 0;
    double lambda_min = 0.0;
    double ratio_min = 0.0;  // lambda_min(n) / lambda_min(n-1); first row reported as 1
    double lambda_second = 0.0;
    double ratio_second = 0.0;

    nlohmann::json to_json() const;
};

/// Rows n = 4..n_max, ratio columns relative to the previous row.
std::vector<RatioRow> ratio_table(int n_max, double tol = 1e-10, bool allow_big = false);

std::string ratio_table_csv(const std::vector<RatioRow>& rows);
std::string ratio_table_text(const std::vector<RatioRow>& rows);

/// Eigenvalues (and optionally eigenvectors) of a symmetric tridiagonal
/// matrix; diag/offdiag are the usual three-term coefficients.
std::vector<double> tridiag_eigen(std::vector<double> diag, std::vector<double> offdiag,
                                  std::vector<std::vector<double>>* vectors = nullptr);

}  // namespace lcsq
