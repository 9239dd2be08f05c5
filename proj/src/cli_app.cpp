#include "fracsde/cli_app.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "fracsde/chaos_expansion.hpp"
#include "fracsde/fou_analysis.hpp"
#include "fracsde/frac_calculus.hpp"
#include "fracsde/io.hpp"
#include "fracsde/parallel.hpp"
#include "fracsde/spde_analysis.hpp"
#include "fracsde/special_functions.hpp"
#include "fracsde/volterra_sim.hpp"

namespace fracsde::cli {

namespace {

double pnum(const RunConfig& cfg, const std::string& key) {
    require(cfg.params.contains(key), "missing required parameter --" + key);
    return cfg.params.at(key).get<double>();
}

double pnum_or(const RunConfig& cfg, const std::string& key, double fallback) {
    return cfg.params.contains(key) ? cfg.params.at(key).get<double>() : fallback;
}

std::string pstr(const RunConfig& cfg, const std::string& key) {
    require(cfg.params.contains(key), "missing required parameter --" + key);
    return cfg.params.at(key).get<std::string>();
}

std::vector<double> pvec(const RunConfig& cfg, const std::string& key) {
    require(cfg.params.contains(key), "missing required parameter --" + key);
    return cfg.params.at(key).get<std::vector<double>>();
}

std::size_t pint(const RunConfig& cfg, const std::string& key) {
    const double v = pnum(cfg, key);
    require(v >= 0.0 && v == std::floor(v), "--" + key + " must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

std::size_t resolve_cli_jobs(std::size_t jobs) {
    if (jobs > 0) return jobs;
    if (const char* env = std::getenv("FRACSDE_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return resolve_jobs(0);
}

special::EvalConfig eval_config(const RunConfig& cfg) {
    special::EvalConfig out;
    out.series_tol = pnum_or(cfg, "series-tol", out.series_tol);
    out.max_terms = static_cast<int>(pnum_or(cfg, "max-terms", out.max_terms));
    out.switch_radius = pnum_or(cfg, "switch-radius", out.switch_radius);
    out.asymptotic_terms = static_cast<int>(pnum_or(cfg, "asymptotic-terms", out.asymptotic_terms));
    return out;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

std::string scalar_output(const RunConfig& cfg, const std::string& name, double value) {
    if (cfg.format == "json") {
        nlohmann::json j;
        j["command"] = cfg.command;
        j[name] = value;
        return j.dump() + "\n";
    }
    return name + " = " + io::format_double(value) + "\n";
}

void run_ml_eval(const RunConfig& cfg, std::string& out) {
    const double beta = pnum(cfg, "beta");
    const double rho = pnum_or(cfg, "rho", 1.0);
    const double a = pnum_or(cfg, "a", 0.0);
    const auto ec = eval_config(cfg);
    double value = 0.0;
    if (cfg.params.contains("t")) {
        value = special::ml_y_eval({beta, rho, a}, pnum(cfg, "t"), ec);
        out += scalar_output(cfg, "y_value", value);
    } else {
        value = special::ml_eval(beta, rho, pnum(cfg, "z"), ec);
        out += scalar_output(cfg, "value", value);
    }
}

void run_frac_apply(const RunConfig& cfg, std::string& out) {
    const std::string op = pstr(cfg, "op");
    const SampledPath input = io::path_from_csv(io::read_file(pstr(cfg, "input")));
    SampledPath result = input;
    if (op == "I" || op == "J") {
        const auto kind =
            op == "I" ? fraccalc::IntegralKind::RL : fraccalc::IntegralKind::Kochubei;
        result = fraccalc::frac_integral(kind, pnum(cfg, "order"), input);
    } else if (op == "D") {
        result = fraccalc::rl_derivative(pnum(cfg, "order"), input);
    } else if (op == "C") {
        result = fraccalc::caputo_derivative(pnum(cfg, "order"), input);
    } else if (op == "fode") {
        result = fraccalc::solve_linear_fode(pnum(cfg, "a"), pnum(cfg, "y0"), input,
                                             pnum(cfg, "order"));
    } else if (op == "gronwall") {
        result = fraccalc::gronwall_bound(input, pnum(cfg, "B"), pnum(cfg, "order"));
    } else {
        throw domain_violation("frac apply: unknown --op '" + op +
                               "' (want I, J, D, C, fode, gronwall)");
    }
    out += io::path_to_csv(result);
}

void run_laplace_probe(const RunConfig& cfg, std::string& out) {
    const SampledPath input = io::path_from_csv(io::read_file(pstr(cfg, "input")));
    const LaplaceGrid grid{pvec(cfg, "lambdas")};
    const auto res = fraccalc::laplace_numeric(input, grid);
    out += "lambda,value,truncation_bound\n";
    for (std::size_t i = 0; i < grid.lambdas.size(); ++i)
        out += io::format_double(grid.lambdas[i]) + "," + io::format_double(res.values[i]) +
               "," + io::format_double(res.truncation_bounds[i]) + "\n";
}

void emit_ensemble(const RunConfig& cfg, const sim::PathEnsemble& ens, std::string& out) {
    if (cfg.format == "bin") {
        require(!cfg.output_path.empty(), "binary format requires --output");
        io::write_file(cfg.output_path, io::ensemble_to_binary(ens), cfg.force);
        out += "wrote " + std::to_string(ens.n_paths()) + " paths to " + cfg.output_path + "\n";
        return;
    }
    out += io::ensemble_to_csv(ens);
}

void run_sim_volterra(const RunConfig& cfg, std::string& out) {
    const GridSpec grid{pnum(cfg, "T"), pint(cfg, "steps")};
    const std::string kind = pstr(cfg, "kernel");
    sim::KernelSpec kernel = sim::KernelSpec::power(1.0, 0.0);
    if (kind == "power")
        kernel = sim::KernelSpec::power(pnum_or(cfg, "scale", 1.0), pnum(cfg, "exponent"));
    else if (kind == "ml")
        kernel = sim::KernelSpec::fou(pnum(cfg, "a"), pnum(cfg, "beta"), pnum(cfg, "gamma"));
    else
        throw domain_violation("sim volterra: unknown --kernel '" + kind + "' (want power, ml)");
    const std::string method = cfg.params.contains("method") ? pstr(cfg, "method") : "increment";
    const auto m = method == "covariance" ? sim::SimMethod::CovarianceFactor
                                          : sim::SimMethod::IncrementQuadrature;
    const auto ens = sim::simulate_volterra(kernel, grid, pint(cfg, "paths"), cfg.seed, m,
                                            resolve_cli_jobs(cfg.jobs));
    emit_ensemble(cfg, ens, out);
}

void run_sim_fou(const RunConfig& cfg, std::string& out) {
    const GridSpec grid{pnum(cfg, "T"), pint(cfg, "steps")};
    const fou::FouParams p{pnum_or(cfg, "x0", 0.0), pnum(cfg, "a"), pnum(cfg, "beta"),
                           pnum(cfg, "gamma")};
    const auto ens =
        sim::simulate_fou(p, grid, pint(cfg, "paths"), cfg.seed, resolve_cli_jobs(cfg.jobs));
    if (cfg.params.contains("moments") && cfg.params.at("moments").get<bool>()) {
        const auto mom = sim::empirical_moments(ens);
        out += "t,mean,mean_se,variance,variance_se\n";
        for (std::size_t i = 0; i < ens.n_nodes(); ++i)
            out += io::format_double(grid.node(i)) + "," + io::format_double(mom.mean[i]) +
                   "," + io::format_double(mom.mean_se[i]) + "," +
                   io::format_double(mom.variance[i]) + "," +
                   io::format_double(mom.variance_se[i]) + "\n";
        return;
    }
    emit_ensemble(cfg, ens, out);
}

void run_ou(const RunConfig& cfg, std::string& out) {
    if (cfg.command == "ou variance") {
        const fou::FouParams p{pnum_or(cfg, "x0", 0.0), pnum(cfg, "a"), pnum(cfg, "beta"),
                               pnum(cfg, "gamma")};
        out += scalar_output(cfg, "variance", fou::fou_variance(p, pnum(cfg, "t")));
    } else if (cfg.command == "ou limit") {
        out += scalar_output(cfg, "limit_variance",
                             fou::fou_limit_variance(pnum(cfg, "a"), pnum(cfg, "beta"),
                                                     pnum(cfg, "gamma")));
    } else {
        const auto regime = fou::regime_classify(pnum(cfg, "beta"), pnum(cfg, "gamma"));
        const char* tag = "";
        switch (regime.tag) {
            case fou::RegimeTag::GeneralizedOnly: tag = "GeneralizedOnly"; break;
            case fou::RegimeTag::ConvergentGaussian: tag = "ConvergentGaussian"; break;
            case fou::RegimeTag::LogGrowth: tag = "LogGrowth"; break;
            case fou::RegimeTag::PowerGrowth: tag = "PowerGrowth"; break;
        }
        if (cfg.format == "json") {
            nlohmann::json j;
            j["command"] = cfg.command;
            j["regime"] = tag;
            if (regime.tag == fou::RegimeTag::PowerGrowth) j["exponent"] = regime.exponent;
            out += j.dump() + "\n";
        } else {
            out += std::string("regime = ") + tag;
            if (regime.tag == fou::RegimeTag::PowerGrowth)
                out += " exponent = " + io::format_double(regime.exponent);
            out += "\n";
        }
    }
}

void run_chaos(const RunConfig& cfg, std::string& out) {
    if (cfg.command == "chaos gbm-moment") {
        const chaos::GbmParams p{pnum_or(cfg, "x0", 1.0), pnum(cfg, "a"), pnum(cfg, "sigma"),
                                 pnum(cfg, "beta"), pnum(cfg, "gamma")};
        out += scalar_output(cfg, "second_moment",
                             chaos::gbm_second_moment(p, pnum(cfg, "t"),
                                                      pnum_or(cfg, "tol", 1e-8)));
    } else if (cfg.command == "chaos propagator") {
        const chaos::GbmParams p{pnum_or(cfg, "x0", 1.0), pnum(cfg, "a"), pnum(cfg, "sigma"),
                                 pnum(cfg, "beta"), pnum(cfg, "gamma")};
        const GridSpec grid{pnum(cfg, "T"), pint(cfg, "steps")};
        const auto table = chaos::gbm_propagator(p, pint(cfg, "K"), pint(cfg, "N"), grid);
        out += io::chaos_table_to_json(table) + "\n";
    } else {  // chaos qnorm
        const double beta = pnum(cfg, "beta");
        const double gamma = pnum(cfg, "gamma");
        const double T = pnum_or(cfg, "T", 1.0);
        const chaos::WeightSequence q{pnum_or(cfg, "qc", 0.5), pnum(cfg, "qp")};
        q.validate();
        const std::size_t kmax = pint(cfg, "kmax");
        out += "K,partial_norm\n";
        double sum = 0.0;
        std::size_t k = 1;
        for (std::size_t K = 16; K <= kmax; K *= 2) {
            for (; k <= K; ++k) {
                const double x = chaos::genproc_coeff(k, T, T, beta, gamma);
                sum += q.q(k) * x * x;
            }
            out += std::to_string(K) + "," + io::format_double(std::sqrt(sum)) + "\n";
        }
    }
}

spde::SpdeParams spde_params(const RunConfig& cfg) {
    return {pnum(cfg, "beta"), pnum(cfg, "gamma"), pnum(cfg, "alpha"), pnum(cfg, "nu"),
            pnum(cfg, "b"),    pnum(cfg, "sigma")};
}

// optional snapping of near-threshold inputs (--tol, default 0: exact)
spde::SpdeParams snap_params(spde::SpdeParams p, double tol) {
    if (tol <= 0.0) return p;
    if (std::abs(p.gamma - 0.5) <= tol) p.gamma = 0.5;
    if (p.gamma > 0.5) {
        const double eps = (p.gamma - 0.5) / p.beta;
        const double critical = p.nu / (1.0 - eps);
        if (std::abs(p.alpha - critical) <= tol) p.alpha = critical;
    }
    if (std::abs(p.alpha - p.nu) <= tol) p.alpha = p.nu;
    return p;
}

void run_spde(const RunConfig& cfg, std::string& out) {
    if (cfg.command == "spde classify") {
        const auto p = snap_params(spde_params(cfg), pnum_or(cfg, "tol", 0.0));
        const auto v = spde::classify(p);
        if (cfg.format == "json") {
            nlohmann::json j;
            j["command"] = cfg.command;
            j["verdict"] = spde::to_string(v.tag);
            j["reason"] = v.reason;
            out += j.dump() + "\n";
        } else {
            out += std::string("verdict = ") + spde::to_string(v.tag) + "\n";
            out += "reason = " + v.reason + "\n";
        }
    } else if (cfg.command == "spde probe") {
        const auto p = spde_params(cfg);
        const GridSpec grid{pnum(cfg, "T"), pint(cfg, "steps")};
        const auto points = spde::growth_probe(p, pvec(cfg, "y"), grid.T, grid);
        out += "y,ratio\n";
        for (const auto& gp : points)
            out += io::format_double(gp.y) + "," + io::format_double(gp.ratio) + "\n";
    } else {  // spde sweep
        const auto betas = pvec(cfg, "beta-list");
        const auto gammas = pvec(cfg, "gamma-list");
        const auto alphas = pvec(cfg, "alpha-list");
        const auto nus = pvec(cfg, "nu-list");
        const double b = pnum(cfg, "b");
        const double sigma = pnum(cfg, "sigma");
        struct Row {
            spde::SpdeParams p;
            spde::Verdict v;
        };
        std::vector<Row> rows;
        for (double beta : betas)
            for (double gamma : gammas)
                for (double alpha : alphas)
                    for (double nu : nus)
                        rows.push_back({{beta, gamma, alpha, nu, b, sigma}, {}});
        parallel_for(rows.size(), resolve_cli_jobs(cfg.jobs),
                     [&](std::size_t i) { rows[i].v = spde::classify(rows[i].p); });
        out += "beta,gamma,alpha,nu,b,sigma,verdict,reason\n";
        for (const auto& r : rows) {
            out += io::format_double(r.p.beta) + "," + io::format_double(r.p.gamma) + "," +
                   io::format_double(r.p.alpha) + "," + io::format_double(r.p.nu) + "," +
                   io::format_double(r.p.b) + "," + io::format_double(r.p.sigma) + "," +
                   spde::to_string(r.v.tag) + "," + csv_quote(r.v.reason) + "\n";
        }
    }
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["seed"] = seed;
    j["output_path"] = output_path;
    j["format"] = format;
    j["force"] = force;
    j["jobs"] = jobs;
    j["params"] = params;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    cfg.command = j.at("command").get<std::string>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.output_path = j.at("output_path").get<std::string>();
    cfg.format = j.at("format").get<std::string>();
    cfg.force = j.at("force").get<bool>();
    cfg.jobs = j.at("jobs").get<std::size_t>();
    cfg.params = j.at("params");
    return cfg;
}

void execute(const RunConfig& cfg, std::string& out) {
    if (cfg.command == "ml eval")
        run_ml_eval(cfg, out);
    else if (cfg.command == "frac apply")
        run_frac_apply(cfg, out);
    else if (cfg.command == "laplace probe")
        run_laplace_probe(cfg, out);
    else if (cfg.command == "sim volterra")
        run_sim_volterra(cfg, out);
    else if (cfg.command == "sim fou")
        run_sim_fou(cfg, out);
    else if (cfg.command.rfind("ou ", 0) == 0)
        run_ou(cfg, out);
    else if (cfg.command.rfind("chaos ", 0) == 0)
        run_chaos(cfg, out);
    else if (cfg.command.rfind("spde ", 0) == 0)
        run_spde(cfg, out);
    else
        throw domain_violation("unknown command: " + cfg.command);

    if (!cfg.output_path.empty() && cfg.format != "bin")
        io::write_file(cfg.output_path, out, cfg.force);
}

namespace {

// CLI11 validator: finite decimal numbers only
const CLI::Validator FiniteNumber(
    [](std::string& s) -> std::string {
        try {
            const double v = std::stod(s);
            if (!std::isfinite(v)) return "value must be finite: " + s;
        } catch (...) {
            return "not a number: " + s;
        }
        return {};
    },
    "FINITE");

struct FlagSpec {
    std::string name;
    bool required = false;
    bool is_vector = false;
    bool is_string = false;
    bool is_flag = false;
};

// Declares flags on a subcommand and records provided values into cfg.params.
void add_flags(CLI::App* sub, RunConfig& cfg, const std::vector<FlagSpec>& flags) {
    for (const auto& f : flags) {
        const std::string opt = "--" + f.name;
        if (f.is_flag) {
            auto setter = [&cfg, name = f.name](std::int64_t) { cfg.params[name] = true; };
            sub->add_flag_function(opt, setter);
        } else if (f.is_vector) {
            CLI::callback_t setter = [&cfg, name = f.name](const CLI::results_t& vals) {
                std::vector<double> v;
                for (const auto& s : vals) v.push_back(std::stod(s));
                cfg.params[name] = v;
                return true;
            };
            auto* o = sub->add_option(opt, setter, "")->delimiter(',')->check(FiniteNumber);
            o->expected(1, -1);
            if (f.required) o->required();
        } else if (f.is_string) {
            CLI::callback_t setter = [&cfg, name = f.name](const CLI::results_t& vals) {
                cfg.params[name] = vals.front();
                return true;
            };
            auto* o = sub->add_option(opt, setter, "");
            if (f.required) o->required();
        } else {
            CLI::callback_t setter = [&cfg, name = f.name](const CLI::results_t& vals) {
                cfg.params[name] = std::stod(vals.front());
                return true;
            };
            auto* o = sub->add_option(opt, setter, "")->check(FiniteNumber);
            if (f.required) o->required();
        }
    }
    sub->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    sub->add_option("--output", cfg.output_path, "write the result to this file");
    sub->add_option("--format", cfg.format, "output format (csv, json, bin)");
    sub->add_flag("--force", cfg.force, "allow overwriting --output");
    sub->add_option("--jobs", cfg.jobs, "worker threads (default: FRACSDE_JOBS or cores)");
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"fracsde: fractional stochastic differential equation toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                    const std::vector<FlagSpec>& flags) {
        CLI::App* sub = parent->add_subcommand(name, desc);
        add_flags(sub, cfg, flags);
        const std::string command =
            parent->get_name().empty() ? name : parent->get_name() + " " + name;
        sub->callback([&cfg, command] { cfg.command = command; });
        return sub;
    };

    auto* ml = app.add_subcommand("ml", "Mittag-Leffler evaluations");
    ml->require_subcommand(1);
    leaf(ml, "eval", "evaluate E_{beta,rho}(z) or y_{beta,rho}(t)",
         {{"beta", true}, {"rho"}, {"a"}, {"z"}, {"t"},
          {"series-tol"}, {"max-terms"}, {"switch-radius"}, {"asymptotic-terms"}});

    auto* frac = app.add_subcommand("frac", "fractional calculus on sampled paths");
    frac->require_subcommand(1);
    leaf(frac, "apply", "apply I/J/D/C, the linear FODE solve, or the Gronwall bound",
         {{"op", true, false, true}, {"order", true}, {"input", true, false, true},
          {"a"}, {"y0"}, {"B"}});

    auto* laplace = app.add_subcommand("laplace", "finite-horizon Laplace transform");
    laplace->require_subcommand(1);
    leaf(laplace, "probe", "transform a sampled path on a lambda grid",
         {{"input", true, false, true}, {"lambdas", true, true}});

    auto* simc = app.add_subcommand("sim", "seeded Monte Carlo simulation");
    simc->require_subcommand(1);
    leaf(simc, "volterra", "Gaussian Volterra ensemble",
         {{"kernel", true, false, true}, {"scale"}, {"exponent"}, {"a"}, {"beta"}, {"gamma"},
          {"T", true}, {"steps", true}, {"paths", true}, {"method", false, false, true}});
    leaf(simc, "fou", "time-fractional Ornstein-Uhlenbeck ensemble",
         {{"x0"}, {"a", true}, {"beta", true}, {"gamma", true}, {"T", true}, {"steps", true},
          {"paths", true}, {"moments", false, false, false, true}});

    auto* ou = app.add_subcommand("ou", "fractional Ornstein-Uhlenbeck analysis");
    ou->require_subcommand(1);
    leaf(ou, "variance", "analytic variance at time t",
         {{"a", true}, {"beta", true}, {"gamma", true}, {"t", true}, {"x0"}});
    leaf(ou, "limit", "limiting variance (gamma > 1/2)",
         {{"a", true}, {"beta", true}, {"gamma", true}});
    leaf(ou, "regime", "long-time variance regime", {{"beta", true}, {"gamma", true}});

    auto* chaosc = app.add_subcommand("chaos", "chaos-expansion computations");
    chaosc->require_subcommand(1);
    leaf(chaosc, "gbm-moment", "second moment of the fractional GBM",
         {{"x0"}, {"a", true}, {"sigma", true}, {"beta", true}, {"gamma", true}, {"t", true},
          {"tol"}});
    leaf(chaosc, "propagator", "chaos coefficient table (JSON)",
         {{"x0"}, {"a", true}, {"sigma", true}, {"beta", true}, {"gamma", true}, {"K", true},
          {"N", true}, {"T", true}, {"steps", true}});
    leaf(chaosc, "qnorm", "partial weighted norms of first-order coefficients",
         {{"beta", true}, {"gamma", true}, {"T"}, {"qc"}, {"qp", true}, {"kmax", true}});

    auto* spdec = app.add_subcommand("spde", "Fourier-mode well-posedness");
    spdec->require_subcommand(1);
    leaf(spdec, "classify", "classify a parameter set",
         {{"beta", true}, {"gamma", true}, {"alpha", true}, {"nu", true}, {"b", true},
          {"sigma", true}, {"tol"}});
    leaf(spdec, "probe", "per-wavenumber growth ratios",
         {{"beta", true}, {"gamma", true}, {"alpha", true}, {"nu", true}, {"b", true},
          {"sigma", true}, {"y", true, true}, {"T", true}, {"steps", true}});
    leaf(spdec, "sweep", "phase-diagram sweep (CSV)",
         {{"beta-list", true, true}, {"gamma-list", true, true}, {"alpha-list", true, true},
          {"nu-list", true, true}, {"b", true}, {"sigma", true}});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::string out;
        execute(cfg, out);
        if (cfg.output_path.empty() || cfg.format == "bin") std::cout << out;
        return 0;
    } catch (const domain_violation& e) {
        std::cerr << "constraint error: " << e.what() << "\n";
        return 3;
    } catch (const numerical_failure& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace fracsde::cli
