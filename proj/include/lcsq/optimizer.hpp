#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lcsq/distributions.hpp"

namespace lcsq {

enum class Method { projected_gradient, frank_wolfe };

std::string method_name(Method m);
Method method_from_name(const std::string& s);

struct OptimizerConfig {
    Method method = Method::projected_gradient;
    int restarts = 32;
    int iters = 5000;
    std::uint64_t seed = 0;
    double tol = 1e-9;  // on objective change
};

struct OptimizationRun {
    int n = 0;
    Method method = Method::projected_gradient;
    int restarts = 0;
    int iters = 0;
    std::uint64_t seed = 0;
    double best_value = 0.0;
    Distribution best;
    std::vector<double> restart_values;  // final objective per restart
    std::vector<bool> converged;

    nlohmann::json to_json(bool include_distribution = true) const;
};

/// Euclidean projection onto the probability simplex (sort-based).
std::vector<double> project_to_simplex(std::vector<double> v);

/// Multi-restart local minimization of P^T L P over the simplex. Restart 0
/// starts from uniform, restart 1 from the counterexample distribution (n>=4),
/// the rest from Dirichlet(1) draws. Nonconvex for n>=4, so only local minima.
OptimizationRun minimize(int n, const OptimizerConfig& cfg, const MatrixOperator& op);
OptimizationRun minimize(int n, const OptimizerConfig& cfg);

struct ConjectureReport {
    int n = 0;
    double best_value = 0.0;
    double sqrt_n = 0.0;
    double cbrt_n = 0.0;
    double uniform_value = 0.0;
    double counterexample_value = 0.0;  // NaN when uniform is optimal (n<=3)
    bool below_sqrt_conjecture = false;
    bool below_cbrt_bound = false;  // must always be false (proven bound)

    nlohmann::json to_json() const;
    std::string to_text() const;
};

ConjectureReport conjecture_report(const OptimizationRun& run, const MatrixOperator& op);

}  // namespace lcsq
