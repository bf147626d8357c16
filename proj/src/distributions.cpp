#include "lcsq/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lcsq/spectra.hpp"

namespace lcsq {

Distribution Distribution::uniform(int n) {
    Distribution d;
    d.n = n;
    const auto dim = factorial(n);
    d.weights.assign(dim, 1.0 / static_cast<double>(dim));
    return d;
}

Distribution Distribution::point_mass(int n, std::uint64_t index) {
    Distribution d;
    d.n = n;
    const auto dim = factorial(n);
    if (index >= dim) throw std::invalid_argument("point_mass: index out of range");
    d.weights.assign(dim, 0.0);
    d.weights[index] = 1.0;
    return d;
}

void Distribution::validate() {
    if (n < 1 || weights.size() != factorial(n))
        throw std::invalid_argument("distribution: weight vector length must be n!");
    double sum = 0.0;
    for (auto w : weights) {
        if (w < 0.0) throw std::invalid_argument("distribution: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("distribution: weights sum to " + std::to_string(sum));
    for (auto& w : weights) w /= sum;
}

nlohmann::json Distribution::to_json(bool sparse) const {
    if (!sparse) return {{"n", n}, {"weights", weights}};
    nlohmann::json support = nlohmann::json::array();
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] != 0.0) support.push_back({i, weights[i]});
    return {{"n", n}, {"support", support}};
}

Distribution Distribution::from_json(const nlohmann::json& j) {
    Distribution d;
    d.n = j.at("n").get<int>();
    const auto dim = factorial(d.n);
    if (j.contains("weights")) {
        d.weights = j.at("weights").get<std::vector<double>>();
    } else {
        d.weights.assign(dim, 0.0);
        for (const auto& pair : j.at("support")) {
            const auto idx = pair.at(0).get<std::uint64_t>();
            if (idx >= dim) throw std::invalid_argument("distribution: support index out of range");
            d.weights[idx] = pair.at(1).get<double>();
        }
    }
    d.validate();
    return d;
}

double expectation_exact(const Distribution& p, const MatrixOperator& op) {
    if (p.weights.size() != op.dim())
        throw std::invalid_argument("expectation_exact: dimension mismatch");
    const auto lp = op.apply(p.weights);
    double s = 0.0;
    for (std::size_t i = 0; i < lp.size(); ++i) s += p.weights[i] * lp[i];
    return s;
}

double marginal_lcs(const Distribution& p, const Permutation& a) {
    if (a.degree() != p.n) throw std::invalid_argument("marginal_lcs: degree mismatch");
    const auto perms = enumerate_all(p.n);
    const auto inv_a = inverse(a);
    std::uint8_t tmp[20], tails[20];
    double s = 0.0;
    for (std::size_t j = 0; j < perms.size(); ++j)
        s += p.weights[j] * lcs_from_inverse(inv_a.entries().data(), perms[j].entries().data(),
                                             p.n, tmp, tails);
    return s;
}

AliasTable::AliasTable(std::span<const double> weights) {
    const std::size_t m = weights.size();
    if (m == 0) throw std::invalid_argument("alias table: empty weights");
    prob_.assign(m, 0.0);
    alias_.assign(m, 0);
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<double> scaled(m);
    for (std::size_t i = 0; i < m; ++i) scaled[i] = weights[i] * static_cast<double>(m) / sum;
    std::vector<std::uint64_t> small, large;
    for (std::size_t i = 0; i < m; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(i);
    while (!small.empty() && !large.empty()) {
        const auto s = small.back();
        small.pop_back();
        const auto l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (auto i : large) prob_[i] = 1.0;
    for (auto i : small) prob_[i] = 1.0;
}

std::uint64_t AliasTable::draw(std::mt19937_64& rng) const {
    const std::uint64_t m = prob_.size();
    const std::uint64_t k = rng() % m;
    const double u = std::generate_canonical<double, 53>(rng);
    return u < prob_[k] ? k : alias_[k];
}

std::vector<Permutation> sample(const Distribution& p, std::uint64_t seed, std::size_t count) {
    const AliasTable table(p.weights);
    const auto perms = enumerate_all(p.n);
    std::mt19937_64 rng(seed);
    std::vector<Permutation> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(perms[table.draw(rng)]);
    return out;
}

McEstimate mc_expectation(const Distribution& p, std::uint64_t pairs, std::uint64_t seed,
                          int workers) {
    if (pairs < 2) throw std::invalid_argument("mc_expectation: need at least 2 pairs");
    if (workers <= 0) {
#ifdef _OPENMP
        workers = omp_get_max_threads();
#else
        workers = 1;
#endif
    }
    const AliasTable table(p.weights);
    const auto perms = enumerate_all(p.n);
    const auto nn = static_cast<std::size_t>(p.n);
    std::vector<std::uint8_t> inv(perms.size() * nn);
    for (std::size_t i = 0; i < perms.size(); ++i) {
        const auto iv = inverse(perms[i]).entries();
        std::copy(iv.begin(), iv.end(), inv.begin() + static_cast<std::ptrdiff_t>(i * nn));
    }

    std::vector<double> sums(static_cast<std::size_t>(workers), 0.0);
    std::vector<double> sqsums(static_cast<std::size_t>(workers), 0.0);
#pragma omp parallel for schedule(static, 1)
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t lo = pairs * static_cast<std::uint64_t>(w) / workers;
        const std::uint64_t hi = pairs * (static_cast<std::uint64_t>(w) + 1) / workers;
        std::seed_seq sq{seed, static_cast<std::uint64_t>(w)};
        std::mt19937_64 rng(sq);
        std::uint8_t tmp[20], tails[20];
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t k = lo; k < hi; ++k) {
            const auto i = table.draw(rng);
            const auto j = table.draw(rng);
            const double v = lcs_from_inverse(&inv[i * nn], perms[j].entries().data(), p.n, tmp,
                                              tails);
            s += v;
            s2 += v * v;
        }
        sums[static_cast<std::size_t>(w)] = s;
        sqsums[static_cast<std::size_t>(w)] = s2;
    }
    double s = 0.0, s2 = 0.0;
    for (int w = 0; w < workers; ++w) {
        s += sums[static_cast<std::size_t>(w)];
        s2 += sqsums[static_cast<std::size_t>(w)];
    }
    const auto np = static_cast<double>(pairs);
    const double mean = s / np;
    const double var = std::max(0.0, (s2 - s * s / np) / (np - 1.0));
    return {mean, std::sqrt(var / np), pairs};
}

nlohmann::json CounterexampleResult::to_json() const {
    nlohmann::json j{{"n", n}, {"uniform_optimal", uniform_optimal}};
    if (!uniform_optimal) {
        j["c"] = c;
        j["lambda_min"] = lambda_min;
        j["expectation_p0"] = expectation_p0;
        j["expectation_uniform"] = expectation_uniform;
        j["gap"] = gap;
        j["p0"] = p0.to_json();
    }
    return j;
}

CounterexampleResult counterexample(int n, const MatrixOperator& op) {
    CounterexampleResult res;
    res.n = n;
    if (n <= 3) {
        res.uniform_optimal = true;
        return res;
    }
    const auto pair = extreme_eigen(op, Which::smallest);
    if (pair.value >= 0.0)
        throw ClaimViolation("counterexample: bottom eigenvalue non-negative at n=" +
                             std::to_string(n));
    res.lambda_min = pair.value;

    const double u = 1.0 / static_cast<double>(op.dim());
    // Largest c with u + c*s*r >= 0 componentwise, for each sign s.
    double best_c = 0.0, best_sign = 1.0;
    for (const double s : {1.0, -1.0}) {
        double worst = 0.0;
        for (const auto r : pair.vector) worst = std::max(worst, -s * r);
        if (worst <= 0.0) continue;
        const double c = u / worst;
        if (c > best_c) {
            best_c = c;
            best_sign = s;
        }
    }
    res.c = best_c;
    res.p0.n = n;
    res.p0.weights.resize(op.dim());
    for (std::size_t i = 0; i < op.dim(); ++i) {
        double w = u + best_c * best_sign * pair.vector[i];
        if (w < 0.0) {
            if (w < -1e-12) throw std::runtime_error("counterexample: negative weight " +
                                                     std::to_string(w));
            w = 0.0;
        }
        res.p0.weights[i] = w;
    }
    res.p0.validate();
    res.expectation_uniform = expectation_exact(Distribution::uniform(n), op);
    res.expectation_p0 = expectation_exact(res.p0, op);
    res.gap = res.expectation_uniform - res.expectation_p0;
    return res;
}

CounterexampleResult counterexample(int n) {
    if (n <= 3) {
        CounterexampleResult res;
        res.n = n;
        res.uniform_optimal = true;
        return res;
    }
    return counterexample(n, MatrixOperator::dense(build_dense(n)));
}

}  // namespace lcsq
