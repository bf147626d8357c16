#include "lcsq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "lcsq/distributions.hpp"
#include "lcsq/lcs_matrix.hpp"
#include "lcsq/optimizer.hpp"
#include "lcsq/spectra.hpp"
#include "lcsq/verify.hpp"

namespace lcsq::cli {

namespace {

void print_report(const VerificationReport& rep, std::ostream& out) {
    out << (rep.passed() ? "[PASS] " : "[FAIL] ") << rep.claim << " n=" << rep.n
        << " mode=" << (rep.mode == VerificationReport::Mode::exhaustive ? "exhaustive" : "sampled")
        << " cases=" << rep.cases << " violations=" << rep.violations << " slack=" << rep.slack
        << " witness=" << rep.witness << '\n';
}

MatrixOperator operator_for(int n, const std::string& matrix_path, bool allow_big) {
    if (!matrix_path.empty()) {
        auto m = load(matrix_path);
        if (n != 0 && m.n != n)
            throw std::invalid_argument("matrix file degree does not match --n");
        return MatrixOperator::dense(std::move(m));
    }
    if (n <= kDenseLimit) return MatrixOperator::dense(build_dense(n));
    if (n == kDenseLimit + 1 && !allow_big) return MatrixOperator::matrix_free(n);
    return MatrixOperator::dense(build_dense(n, true));
}

Distribution load_distribution(const std::string& spec, int n, const MatrixOperator& op) {
    if (spec == "uniform") return Distribution::uniform(n);
    if (spec == "counterexample") {
        const auto ce = counterexample(n, op);
        if (ce.uniform_optimal)
            throw std::invalid_argument("no counterexample distribution exists for n<=3");
        return ce.p0;
    }
    std::ifstream f(spec);
    if (!f) throw std::runtime_error("cannot open distribution file " + spec);
    nlohmann::json j;
    f >> j;
    auto d = Distribution::from_json(j);
    if (d.n != n) throw std::invalid_argument("distribution degree does not match --n");
    return d;
}

int run_impl(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"LCS matrix toolkit for distributions on the symmetric group"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "parallelism degree (default: all cores)");

    // build
    auto* build_cmd = app.add_subcommand("build", "build L^(n) and write it to a matrix file");
    int build_n = 0;
    std::string build_out;
    bool build_big = false;
    build_cmd->add_option("--n", build_n, "degree")->required();
    build_cmd->add_option("--out", build_out, "output path (default l<n>.lcsm)");
    build_cmd->add_flag("--allow-big", build_big, "permit the ~1.6 GB n=8 build");

    // eigen
    auto* eigen_cmd = app.add_subcommand("eigen", "extreme eigenvalues of L^(n)");
    int eigen_n = 0;
    std::string which = "summary", eigen_matrix;
    double eigen_tol = 1e-10;
    bool eigen_json = false, eigen_big = false;
    eigen_cmd->add_option("--n", eigen_n, "degree")->required();
    eigen_cmd->add_option("--which", which,
                          "smallest|second-largest|largest|all-small-n|summary");
    eigen_cmd->add_option("--tol", eigen_tol, "residual tolerance");
    eigen_cmd->add_option("--matrix", eigen_matrix, "load matrix from file instead of building");
    eigen_cmd->add_flag("--json", eigen_json, "JSON output (full precision)");
    eigen_cmd->add_flag("--allow-big", eigen_big, "dense path for n=8");

    // table
    auto* table_cmd = app.add_subcommand("table", "eigenvalue/ratio table for n=4..n_max");
    int n_max = 7;
    std::string table_format = "text";
    double table_tol = 1e-10;
    bool table_big = false;
    table_cmd->add_option("--n-max", n_max, "largest degree")->required();
    table_cmd->add_option("--format", table_format, "text|json|csv");
    table_cmd->add_option("--tol", table_tol, "residual tolerance");
    table_cmd->add_flag("--allow-big", table_big, "include n=8 via the dense path");

    // counterexample
    auto* ce_cmd = app.add_subcommand("counterexample",
                                      "distribution with expectation below uniform");
    int ce_n = 0;
    bool ce_json = false;
    ce_cmd->add_option("--n", ce_n, "degree")->required();
    ce_cmd->add_flag("--json", ce_json, "JSON output with the full weight vector");

    // optimize
    auto* opt_cmd = app.add_subcommand("optimize", "search for expectation-minimizing distributions");
    int opt_n = 0, restarts = 32, iters = 5000;
    std::uint64_t opt_seed = 0;
    std::string opt_method = "pg";
    bool opt_json = false;
    opt_cmd->add_option("--n", opt_n, "degree")->required();
    opt_cmd->add_option("--method", opt_method, "pg|fw");
    opt_cmd->add_option("--restarts", restarts, "number of restarts");
    opt_cmd->add_option("--iters", iters, "iterations per restart");
    opt_cmd->add_option("--seed", opt_seed, "seed for random starts");
    opt_cmd->add_flag("--json", opt_json, "JSON output");

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Monte-Carlo expectation estimate");
    int sample_n = 0;
    std::string dist_spec = "uniform";
    std::uint64_t pairs = 0, sample_seed = 0;
    bool sample_json = false;
    sample_cmd->add_option("--n", sample_n, "degree")->required();
    sample_cmd->add_option("--dist", dist_spec, "path|uniform|counterexample");
    sample_cmd->add_option("--pairs", pairs, "number of i.i.d. pairs")->required();
    sample_cmd->add_option("--seed", sample_seed, "RNG seed");
    sample_cmd->add_flag("--json", sample_json, "JSON output");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run paper-claim checks");
    std::string what;
    int verify_n = 0;
    bool exhaustive = false, allow_heavy = false;
    std::uint64_t samples = 1'000'000, verify_seed = 0;
    bool verify_json = false;
    verify_cmd->add_option("what", what, "triple|erdos|spectral|cubic|blocks|all")->required();
    verify_cmd->add_option("--n", verify_n, "degree (n_max for spectral)")->required();
    verify_cmd->add_flag("--exhaustive", exhaustive, "exhaustive scan where applicable");
    verify_cmd->add_option("--samples", samples, "sample count for sampled mode");
    verify_cmd->add_option("--seed", verify_seed, "RNG seed for sampled mode");
    verify_cmd->add_flag("--allow-heavy", allow_heavy, "permit the n=6 exhaustive triple scan");
    verify_cmd->add_flag("--json", verify_json, "JSON output");

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    if (threads > 0) {
#ifdef _OPENMP
        omp_set_num_threads(threads);
#endif
    }

    if (*build_cmd) {
        const auto m = build_dense(build_n, build_big);
        const auto path = build_out.empty() ? "l" + std::to_string(build_n) + ".lcsm" : build_out;
        save(m, path);
        out << "wrote " << path << " n=" << m.n << " dim=" << m.dim << '\n';
        return 0;
    }

    if (*eigen_cmd) {
        const auto op = operator_for(eigen_n, eigen_matrix, eigen_big);
        if (which == "all-small-n") {
            const auto vals = full_spectrum(op.matrix());
            if (eigen_json) {
                out << nlohmann::json{{"n", eigen_n}, {"eigenvalues", vals}}.dump(2) << '\n';
            } else {
                out << std::fixed << std::setprecision(4);
                for (auto v : vals) out << v << '\n';
            }
            return 0;
        }
        if (which == "summary") {
            const auto s = spectral_summary(op, eigen_tol);
            if (eigen_json) {
                out << s.to_json().dump(2) << '\n';
            } else {
                out << std::fixed << std::setprecision(4);
                out << "lambda_min = " << s.lambda_min << '\n';
                out << "lambda_" << (op.dim() - 1) << " = " << s.lambda_second_max << '\n';
                out << "lambda_max = " << s.lambda_max << '\n';
            }
            return 0;
        }
        Which w;
        if (which == "smallest")
            w = Which::smallest;
        else if (which == "second-largest")
            w = Which::second_largest;
        else if (which == "largest")
            w = Which::largest;
        else {
            err << "usage error: unknown --which value " << which << '\n';
            return 2;
        }
        const auto pair = extreme_eigen(op, w, eigen_tol);
        if (eigen_json) {
            out << nlohmann::json{{"n", eigen_n},
                                  {"which", which},
                                  {"value", pair.value},
                                  {"residual", pair.residual},
                                  {"iterations", pair.iterations}}
                       .dump(2)
                << '\n';
        } else {
            out << std::fixed << std::setprecision(4) << pair.value << '\n';
        }
        return 0;
    }

    if (*table_cmd) {
        const auto rows = ratio_table(n_max, table_tol, table_big);
        if (table_format == "json") {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : rows) j.push_back(r.to_json());
            out << j.dump(2) << '\n';
        } else if (table_format == "csv") {
            out << ratio_table_csv(rows);
        } else {
            out << ratio_table_text(rows);
        }
        return 0;
    }

    if (*ce_cmd) {
        const auto res = counterexample(ce_n);
        if (ce_json) {
            out << res.to_json().dump(2) << '\n';
        } else if (res.uniform_optimal) {
            out << "n=" << ce_n << ": uniform distribution is optimal, no counterexample\n";
        } else {
            out << std::fixed << std::setprecision(6);
            out << "n=" << ce_n << " c=" << res.c << " lambda_min=" << res.lambda_min
                << " E[P0]=" << res.expectation_p0 << " E[U]=" << res.expectation_uniform
                << " gap=" << res.gap << '\n';
        }
        return 0;
    }

    if (*opt_cmd) {
        OptimizerConfig cfg;
        cfg.method = method_from_name(opt_method);
        cfg.restarts = restarts;
        cfg.iters = iters;
        cfg.seed = opt_seed;
        const auto op = MatrixOperator::dense(build_dense(opt_n));
        const auto run = minimize(opt_n, cfg, op);
        const auto rep = conjecture_report(run, op);
        if (opt_json) {
            nlohmann::json j = run.to_json();
            j["report"] = rep.to_json();
            out << j.dump(2) << '\n';
        } else {
            out << rep.to_text();
        }
        return 0;
    }

    if (*sample_cmd) {
        const auto op = operator_for(sample_n, "", false);
        const auto d = load_distribution(dist_spec, sample_n, op);
        const auto est = mc_expectation(d, pairs, sample_seed);
        const double exact = expectation_exact(d, op);
        if (sample_json) {
            out << nlohmann::json{{"n", sample_n},
                                  {"pairs", est.pairs},
                                  {"estimate", est.estimate},
                                  {"std_error", est.std_error},
                                  {"exact", exact}}
                       .dump(2)
                << '\n';
        } else {
            out << std::fixed << std::setprecision(6);
            out << "estimate=" << est.estimate << " stderr=" << est.std_error
                << " exact=" << exact << '\n';
        }
        return 0;
    }

    if (*verify_cmd) {
        std::vector<VerificationReport> reports;
        const bool all = what == "all";
        if (what == "triple" || all)
            reports.push_back(check_triple_product(verify_n, exhaustive, samples, verify_seed,
                                                   allow_heavy));
        if (what == "erdos" || all) reports.push_back(check_erdos_szekeres(verify_n));
        if (what == "spectral" || all) {
            for (auto& r : check_spectral_claims(std::min(verify_n, kDenseLimit)))
                reports.push_back(std::move(r));
        }
        if (what == "cubic" || all) {
            const auto op = MatrixOperator::dense(build_dense(verify_n));
            reports.push_back(check_cubic_chain(Distribution::uniform(verify_n), op));
            reports.push_back(check_cubic_chain(Distribution::point_mass(verify_n, 0), op));
            if (verify_n >= 4)
                reports.push_back(check_cubic_chain(counterexample(verify_n, op).p0, op));
        }
        if (what == "blocks" || all) reports.push_back(verify_blocks(verify_n));
        if (reports.empty()) {
            err << "usage error: unknown verify target " << what << '\n';
            return 2;
        }
        bool ok = true;
        if (verify_json) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : reports) {
                j.push_back(r.to_json());
                ok = ok && r.passed();
            }
            out << j.dump(2) << '\n';
        } else {
            for (const auto& r : reports) {
                print_report(r, out);
                ok = ok && r.passed();
            }
        }
        return ok ? 0 : 1;
    }

    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    try {
        return run_impl(std::move(args), out, err);
    } catch (const ClaimViolation& e) {
        err << "claim violation: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace lcsq::cli
