#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "json.hpp"
#include "lcsq/lcs_matrix.hpp"
#include "lcsq/perm.hpp"

namespace lcsq {

/// Raised when a computation contradicts a proven claim (eigensign,
/// lower bounds); the CLI maps this to its own exit code.
struct ClaimViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Probability vector over S_n in canonical enumeration order.
struct Distribution {
    int n = 0;
    std::vector<double> weights;

    static Distribution uniform(int n);
    static Distribution point_mass(int n, std::uint64_t index);

    /// Checks non-negativity and renormalizes if the sum is within 1e-12 of 1.
    void validate();

    nlohmann::json to_json(bool sparse = false) const;
    static Distribution from_json(const nlohmann::json& j);
};

double expectation_exact(const Distribution& p, const MatrixOperator& op);

/// Sum over S_n of p(pi) * LCS(pi, a).
double marginal_lcs(const Distribution& p, const Permutation& a);

/// Vose alias table: O(n!) setup, O(1) per draw.
class AliasTable {
public:
    explicit AliasTable(std::span<const double> weights);
    std::uint64_t draw(std::mt19937_64& rng) const;

private:
    std::vector<double> prob_;
    std::vector<std::uint64_t> alias_;
};

std::vector<Permutation> sample(const Distribution& p, std::uint64_t seed, std::size_t count);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t pairs = 0;
};

/// Monte-Carlo estimate of E_P[LCS] over i.i.d. pairs. Pairs are split into
/// `workers` deterministic substreams (seeded from seed and the worker index),
/// so the result depends only on (seed, workers).
McEstimate mc_expectation(const Distribution& p, std::uint64_t pairs, std::uint64_t seed,
                          int workers = 0);

struct CounterexampleResult {
    int n = 0;
    bool uniform_optimal = false;  // set for n <= 3, where no counterexample exists
    double c = 0.0;
    double lambda_min = 0.0;
    Distribution p0;
    double expectation_p0 = 0.0;
    double expectation_uniform = 0.0;
    double gap = 0.0;  // expectation_uniform - expectation_p0 = -c^2 * lambda_min

    nlohmann::json to_json() const;
};

/// Perturbs the uniform distribution along the bottom eigenvector with the
/// largest feasible coefficient, picking the better of the two signs.
CounterexampleResult counterexample(int n);
CounterexampleResult counterexample(int n, const MatrixOperator& op);

}  // namespace lcsq
