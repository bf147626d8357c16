#include "lcsq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace lcsq {

std::string method_name(Method m) {
    return m == Method::projected_gradient ? "projected_gradient" : "frank_wolfe";
}

Method method_from_name(const std::string& s) {
    if (s == "pg" || s == "projected_gradient") return Method::projected_gradient;
    if (s == "fw" || s == "frank_wolfe") return Method::frank_wolfe;
    throw std::invalid_argument("unknown method: " + s);
}

std::vector<double> project_to_simplex(std::vector<double> v) {
    const auto m = v.size();
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0.0, theta = 0.0;
    std::size_t rho = 0;
    for (std::size_t k = 0; k < m; ++k) {
        css += u[k];
        const double t = (css - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) {
            rho = k + 1;
            theta = t;
        }
    }
    (void)rho;
    for (auto& x : v) x = std::max(0.0, x - theta);
    return v;
}

namespace {

struct RestartResult {
    double value = 0.0;
    std::vector<double> point;
    bool converged = false;
};

double objective(const MatrixOperator& op, const std::vector<double>& p,
                 std::vector<double>* lp_out = nullptr) {
    auto lp = op.apply(p);
    double f = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) f += p[i] * lp[i];
    if (lp_out) *lp_out = std::move(lp);
    return f;
}

RestartResult run_pg(const MatrixOperator& op, std::vector<double> p, int iters, double tol) {
    RestartResult res;
    std::vector<double> lp;
    double f = objective(op, p, &lp);
    double step = 1.0 / static_cast<double>(op.n() * op.dim());  // ~1/||L||
    for (int it = 0; it < iters; ++it) {
        // gradient is 2 L p
        bool accepted = false;
        for (int half = 0; half < 40; ++half) {
            std::vector<double> cand(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) cand[i] = p[i] - step * 2.0 * lp[i];
            cand = project_to_simplex(std::move(cand));
            std::vector<double> lcand;
            const double fc = objective(op, cand, &lcand);
            if (fc < f) {
                const double drop = f - fc;
                p = std::move(cand);
                lp = std::move(lcand);
                f = fc;
                accepted = true;
                step *= 2.0;  // cautious growth, halved again on rejection
                if (drop < tol) {
                    res.converged = true;
                    it = iters;
                }
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.converged = true;
            break;
        }
    }
    res.value = f;
    res.point = std::move(p);
    return res;
}

RestartResult run_fw(const MatrixOperator& op, std::vector<double> p, int iters, double tol) {
    RestartResult res;
    std::vector<double> lp;
    double f = objective(op, p, &lp);
    for (int it = 0; it < iters; ++it) {
        // linear minimization over the simplex picks the smallest gradient entry
        std::size_t k = 0;
        for (std::size_t i = 1; i < lp.size(); ++i)
            if (lp[i] < lp[k]) k = i;
        // d = e_k - p;  phi(g) = f + 2 g d^T L p + g^2 d^T L d
        std::vector<double> d(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) d[i] = -p[i];
        d[k] += 1.0;
        double dlp = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) dlp += d[i] * lp[i];
        const double fw_gap = -2.0 * dlp;
        if (fw_gap <= tol) {
            res.converged = true;
            break;
        }
        const auto ld = op.apply(d);
        double dld = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) dld += d[i] * ld[i];
        double gamma;
        if (dld > 0.0) {
            gamma = std::clamp(-dlp / dld, 0.0, 1.0);
        } else {
            // concave along the segment: best endpoint
            gamma = (2.0 * dlp + dld < 0.0) ? 1.0 : 0.0;
        }
        if (gamma == 0.0) {
            res.converged = true;
            break;
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] += gamma * d[i];
            lp[i] += gamma * ld[i];
        }
        const double fn = f + 2.0 * gamma * dlp + gamma * gamma * dld;
        if (f - fn < tol) {
            f = fn;
            res.converged = true;
            break;
        }
        f = fn;
    }
    res.value = f;
    res.point = std::move(p);
    return res;
}

std::vector<double> dirichlet_start(std::size_t dim, std::uint64_t seed, int restart) {
    std::seed_seq sq{seed, static_cast<std::uint64_t>(restart)};
    std::mt19937_64 rng(sq);
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> p(dim);
    double s = 0.0;
    for (auto& x : p) {
        x = exp1(rng);
        s += x;
    }
    for (auto& x : p) x /= s;
    return p;
}

}  // namespace

OptimizationRun minimize(int n, const OptimizerConfig& cfg, const MatrixOperator& op) {
    if (cfg.restarts < 1 || cfg.iters < 1 || cfg.tol <= 0.0)
        throw std::invalid_argument("minimize: config fields must be positive");
    OptimizationRun run;
    run.n = n;
    run.method = cfg.method;
    run.restarts = cfg.restarts;
    run.iters = cfg.iters;
    run.seed = cfg.seed;
    run.restart_values.assign(static_cast<std::size_t>(cfg.restarts), 0.0);
    run.converged.assign(static_cast<std::size_t>(cfg.restarts), false);

    std::vector<std::vector<double>> starts;
    starts.push_back(Distribution::uniform(n).weights);
    if (cfg.restarts > 1) {
        if (n >= 4)
            starts.push_back(counterexample(n, op).p0.weights);
        else
            starts.push_back(dirichlet_start(op.dim(), cfg.seed, 1));
    }
    for (int r = static_cast<int>(starts.size()); r < cfg.restarts; ++r)
        starts.push_back(dirichlet_start(op.dim(), cfg.seed, r));

    std::vector<RestartResult> results(static_cast<std::size_t>(cfg.restarts));
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < cfg.restarts; ++r) {
        results[static_cast<std::size_t>(r)] =
            cfg.method == Method::projected_gradient
                ? run_pg(op, starts[static_cast<std::size_t>(r)], cfg.iters, cfg.tol)
                : run_fw(op, starts[static_cast<std::size_t>(r)], cfg.iters, cfg.tol);
    }

    int best = 0;
    for (int r = 0; r < cfg.restarts; ++r) {
        run.restart_values[static_cast<std::size_t>(r)] = results[static_cast<std::size_t>(r)].value;
        run.converged[static_cast<std::size_t>(r)] = results[static_cast<std::size_t>(r)].converged;
        if (results[static_cast<std::size_t>(r)].value < results[static_cast<std::size_t>(best)].value)
            best = r;
    }
    run.best_value = results[static_cast<std::size_t>(best)].value;
    run.best.n = n;
    run.best.weights = std::move(results[static_cast<std::size_t>(best)].point);
    run.best.validate();
    return run;
}

OptimizationRun minimize(int n, const OptimizerConfig& cfg) {
    return minimize(n, cfg, MatrixOperator::dense(build_dense(n)));
}

nlohmann::json OptimizationRun::to_json(bool include_distribution) const {
    nlohmann::json j{{"n", n},
                     {"method", method_name(method)},
                     {"restarts", restarts},
                     {"iters", iters},
                     {"seed", seed},
                     {"best_value", best_value},
                     {"restart_values", restart_values},
                     {"converged", converged}};
    if (include_distribution) j["best_distribution"] = best.to_json();
    return j;
}

ConjectureReport conjecture_report(const OptimizationRun& run, const MatrixOperator& op) {
    ConjectureReport rep;
    rep.n = run.n;
    rep.best_value = run.best_value;
    rep.sqrt_n = std::sqrt(static_cast<double>(run.n));
    rep.cbrt_n = std::cbrt(static_cast<double>(run.n));
    rep.uniform_value = expectation_exact(Distribution::uniform(run.n), op);
    const auto ce = counterexample(run.n, op);
    rep.counterexample_value =
        ce.uniform_optimal ? std::numeric_limits<double>::quiet_NaN() : ce.expectation_p0;
    rep.below_sqrt_conjecture = rep.best_value < rep.sqrt_n;
    rep.below_cbrt_bound = rep.best_value < rep.cbrt_n - 1e-9;
    if (rep.below_cbrt_bound)
        throw ClaimViolation("optimizer value below the proven cube-root bound at n=" +
                             std::to_string(run.n));
    return rep;
}

nlohmann::json ConjectureReport::to_json() const {
    return {{"n", n},
            {"best_value", best_value},
            {"sqrt_n", sqrt_n},
            {"cbrt_n", cbrt_n},
            {"uniform_value", uniform_value},
            {"counterexample_value",
             std::isnan(counterexample_value) ? nlohmann::json() : nlohmann::json(counterexample_value)},
            {"below_sqrt_conjecture", below_sqrt_conjecture},
            {"below_cbrt_bound", below_cbrt_bound}};
}

std::string ConjectureReport::to_text() const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6);
    os << "n=" << n << "  best=" << best_value << "  sqrt(n)=" << sqrt_n << "  cbrt(n)=" << cbrt_n
       << "  uniform=" << uniform_value;
    if (!std::isnan(counterexample_value)) os << "  counterexample=" << counterexample_value;
    os << "  gap_to_sqrt=" << (best_value - sqrt_n) << "  gap_to_cbrt=" << (best_value - cbrt_n)
       << '\n';
    return os.str();
}

}  // namespace lcsq
