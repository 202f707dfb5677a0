// Command-line front end: exact CDF and ROC evaluation, the optimal-sample
// count analysis, the Monte Carlo cross-check, and the validation suite.
// Output is CSV (comment preamble, header, 12-significant-digit rows) or a
// mirroring JSON object with --json; --out redirects either to a file.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrl/detector.hpp"
#include "lrl/mc.hpp"
#include "lrl/rmt_cdf.hpp"
#include "lrl/validate.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 0x1C0FFEE;

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void emit_csv(const OutputRecord& rec, std::ostream& os) {
    os << "# schema_version=1\n";
    os << "# command=" << rec.command << "\n";
    for (const auto& [key, value] : rec.params) os << "# " << key << "=" << value << "\n";
    for (std::size_t c = 0; c < rec.columns.size(); ++c) {
        if (c) os << ",";
        os << rec.columns[c];
    }
    os << "\n";
    for (const auto& row : rec.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ",";
            os << fmt12(row[c]);
        }
        os << "\n";
    }
}

void emit_json(const OutputRecord& rec, std::ostream& os) {
    nlohmann::ordered_json j;
    j["schema_version"] = "1";
    j["command"] = rec.command;
    auto params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : rec.params) params[key] = value;
    j["params"] = params;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : rec.rows) {
        auto obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c)
            // Quantize through the CSV rendering so both formats carry
            // bit-identical numbers.
            obj[rec.columns[c]] = std::stod(fmt12(row[c]));
        rows.push_back(obj);
    }
    j["rows"] = rows;
    os << j.dump(2) << "\n";
}

void emit(const OutputRecord& rec, bool json_mode, std::ostream& os) {
    if (json_mode)
        emit_json(rec, os);
    else
        emit_csv(rec, os);
}

// All parsed flag values; which ones matter depends on the subcommand.
struct Cli {
    int m = 1, n = 1, p = 1;
    double eta = 0.0;
    double snr_db = 0.0;
    double t = 0.0;
    double t_min = 0.0, t_max = 0.0;
    int points = 0;  // 0 = per-command default
    double pf = 0.5;
    double nu = 1.0;
    long trials = 10000;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = machine parallelism
    bool json = false;
    std::string out;
    std::string level = "quick";
    bool tamper = false;
};

std::uint64_t resolve_seed(bool seed_given, std::uint64_t flag_value) {
    if (seed_given) return flag_value;
    if (const char* env = std::getenv("LRL_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 0);
        if (end == env || *end != '\0')
            throw std::domain_error("LRL_SEED must be an integer");
        return v;
    }
    return kDefaultSeed;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<double> log_spaced(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::domain_error("t grid needs 0 < t-min < t-max");
    if (points < 2) throw std::domain_error("grid needs at least 2 points");
    std::vector<double> grid(points);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        grid[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
    return grid;
}

std::vector<double> uniform_pf_grid(int points) {
    if (points < 2) throw std::domain_error("P_F grid needs at least 2 points");
    std::vector<double> grid(points);
    for (int i = 1; i <= points; ++i)
        grid[i - 1] = static_cast<double>(i) / (points + 1);
    return grid;
}

// Default t grid spans the central 99.9% of the analytic mass.
std::vector<double> default_t_grid(const lrl::EnsembleParams& pr, double eta,
                                   const Cli& cli) {
    const int points = cli.points > 0 ? cli.points : 50;
    double lo = cli.t_min, hi = cli.t_max;
    if (lo <= 0.0) lo = lrl::cdf_inverse(pr, lrl::Spike{eta}, 0.0005);
    if (hi <= 0.0) hi = lrl::cdf_inverse(pr, lrl::Spike{eta}, 0.9995);
    return log_spaced(lo, hi, points);
}

void add_common_params(OutputRecord& rec, const lrl::EnsembleParams& pr) {
    rec.params.emplace_back("m", std::to_string(pr.m));
    rec.params.emplace_back("n", std::to_string(pr.n));
    rec.params.emplace_back("p", std::to_string(pr.p));
}

int run_cdf(const Cli& cli, bool t_given, std::ostream& os) {
    const lrl::EnsembleParams pr{cli.m, cli.n, cli.p};
    pr.validate();
    if (cli.eta < 0.0) throw std::domain_error("--eta must be >= 0");

    if (t_given && !cli.json) {
        os << fmt12(lrl::cdf_max_eig(pr, lrl::Spike{cli.eta}, cli.t)) << "\n";
        return 0;
    }

    OutputRecord rec;
    rec.command = "cdf";
    add_common_params(rec, pr);
    rec.params.emplace_back("eta", fmt12(cli.eta));
    rec.columns = {"t", "cdf"};
    const std::vector<double> grid =
        t_given ? std::vector<double>{cli.t} : default_t_grid(pr, cli.eta, cli);
    for (double t : grid)
        rec.rows.push_back({t, lrl::cdf_max_eig(pr, lrl::Spike{cli.eta}, t)});
    emit(rec, cli.json, os);
    return 0;
}

int run_roc(const Cli& cli, std::ostream& os) {
    const lrl::EnsembleParams pr{cli.m, cli.n, cli.p};
    pr.validate();
    const double gamma = lrl::db_to_gamma(cli.snr_db);
    const lrl::DetectorParams dp{pr, gamma};
    const int points = cli.points > 0 ? cli.points : 99;
    const lrl::RocCurve curve = lrl::roc_curve(dp, uniform_pf_grid(points));

    OutputRecord rec;
    rec.command = "roc";
    add_common_params(rec, pr);
    rec.params.emplace_back("snr_db", fmt12(cli.snr_db));
    rec.params.emplace_back("gamma", fmt12(gamma));
    rec.columns = {"p_f", "p_d", "mu_th"};
    for (const auto& pt : curve) rec.rows.push_back({pt.p_f, pt.p_d, pt.threshold});
    emit(rec, cli.json, os);
    return 0;
}

int run_roc_balanced(const Cli& cli, std::ostream& os) {
    const double gamma = lrl::db_to_gamma(cli.snr_db);
    const int points = cli.points > 0 ? cli.points : 99;

    OutputRecord rec;
    rec.command = "roc-balanced";
    rec.params.emplace_back("m", std::to_string(cli.m));
    rec.params.emplace_back("p", std::to_string(cli.p));
    rec.params.emplace_back("snr_db", fmt12(cli.snr_db));
    rec.params.emplace_back("gamma", fmt12(gamma));
    rec.columns = {"p_f", "p_d"};
    for (double q : uniform_pf_grid(points))
        rec.rows.push_back({q, lrl::roc_balanced(cli.m, cli.p, gamma, q)});
    emit(rec, cli.json, os);
    return 0;
}

int run_optimal_p(const Cli& cli, std::ostream& os) {
    const double gamma = lrl::db_to_gamma(cli.snr_db);
    const lrl::PBounds bounds = lrl::optimal_p_bounds(cli.pf, gamma, cli.nu);
    const double approx = lrl::optimal_p_approx(cli.pf, gamma, cli.nu);
    const lrl::OptimalP exact = lrl::optimal_p_exact(cli.pf, gamma, cli.nu);

    // P_D of the integer design nearest a continuous candidate p.
    auto pd_at = [&](double p_real) {
        const long pi = std::max(1L, std::lround(p_real));
        const long mi = std::max(1L, std::lround(cli.nu * static_cast<double>(pi)));
        return lrl::roc_balanced(static_cast<int>(mi), static_cast<int>(pi), gamma,
                                 cli.pf);
    };

    OutputRecord rec;
    rec.command = "optimal-p";
    rec.params.emplace_back("pf", fmt12(cli.pf));
    rec.params.emplace_back("snr_db", fmt12(cli.snr_db));
    rec.params.emplace_back("gamma", fmt12(gamma));
    rec.params.emplace_back("nu", fmt12(cli.nu));
    rec.columns = {"p_lower",    "p_upper",    "p_approx",    "p_star",
                   "p_d_lower",  "p_d_upper",  "p_d_approx",  "p_d_star"};
    rec.rows.push_back({bounds.lower, bounds.upper, approx,
                        static_cast<double>(exact.p_star), pd_at(bounds.lower),
                        pd_at(bounds.upper), pd_at(approx), exact.p_d_max});
    emit(rec, cli.json, os);
    return 0;
}

int run_simulate(const Cli& cli, bool eta_given, bool snr_given, std::ostream& os) {
    const lrl::EnsembleParams pr{cli.m, cli.n, cli.p};
    pr.validate();
    if (eta_given == snr_given)
        throw std::domain_error("simulate needs exactly one of --eta or --snr-db");
    const int threads = resolve_threads(cli.threads);

    OutputRecord rec;
    rec.command = "simulate";
    add_common_params(rec, pr);
    rec.params.emplace_back("trials", std::to_string(cli.trials));
    rec.params.emplace_back("seed", std::to_string(cli.seed));

    if (eta_given) {
        // Empirical CDF of the raw largest-eigenvalue draws.
        if (cli.eta < 0.0) throw std::domain_error("--eta must be >= 0");
        lrl::SimConfig cfg;
        cfg.ensemble = pr;
        cfg.eta = cli.eta;
        cfg.trials = cli.trials;
        cfg.seed = cli.seed;
        const lrl::EigSampleSet draws = lrl::simulate_max_eig(cfg, threads);
        auto analytic = [&](double t) {
            return lrl::cdf_max_eig(pr, lrl::Spike{cli.eta}, t);
        };
        const auto [mn, mx] =
            std::minmax_element(draws.values.begin(), draws.values.end());
        rec.params.emplace_back("eta", fmt12(cli.eta));
        rec.params.emplace_back("ks", fmt12(lrl::ks_statistic(draws, analytic)));
        rec.params.emplace_back("sample_min", fmt12(*mn));
        rec.params.emplace_back("sample_max", fmt12(*mx));
        rec.columns = {"t", "cdf_empirical", "cdf_analytic"};
        for (double t : default_t_grid(pr, cli.eta, cli))
            rec.rows.push_back({t, lrl::empirical_cdf(draws, t), analytic(t)});
    } else {
        // Empirical ROC: null and spiked runs on independent streams,
        // exceedance rates at the analytic thresholds.
        const double gamma = lrl::db_to_gamma(cli.snr_db);
        lrl::SimConfig cfg;
        cfg.ensemble = pr;
        cfg.eta = 0.0;
        cfg.trials = cli.trials;
        cfg.seed = cli.seed;
        const lrl::EigSampleSet h0 = lrl::simulate_max_eig(cfg, threads);
        cfg.eta = gamma;
        cfg.seed = cli.seed + 1;
        const lrl::EigSampleSet h1 = lrl::simulate_max_eig(cfg, threads);

        rec.params.emplace_back("snr_db", fmt12(cli.snr_db));
        rec.params.emplace_back("gamma", fmt12(gamma));
        rec.params.emplace_back(
            "ks_null", fmt12(lrl::ks_statistic(h0, [&](double t) {
                return lrl::cdf_max_eig(pr, lrl::Spike{0.0}, t);
            })));
        rec.params.emplace_back(
            "ks_spiked", fmt12(lrl::ks_statistic(h1, [&](double t) {
                return lrl::cdf_max_eig(pr, lrl::Spike{gamma}, t);
            })));
        rec.columns = {"p_f", "p_f_empirical", "p_d_empirical", "p_d_analytic",
                       "mu_th"};
        const int points = cli.points > 0 ? cli.points : 99;
        const lrl::DetectorParams dp{pr, gamma};
        for (double q : uniform_pf_grid(points)) {
            const double mu = lrl::threshold_for_pf(dp, q);
            const double scaled = pr.kappa() * mu;
            rec.rows.push_back({q, 1.0 - lrl::empirical_cdf(h0, scaled),
                                1.0 - lrl::empirical_cdf(h1, scaled),
                                lrl::detection_probability(dp, mu), mu});
        }
    }
    emit(rec, cli.json, os);
    return 0;
}

int run_validate(const Cli& cli, std::ostream& os) {
    const lrl::ValidateLevel level =
        cli.level == "full" ? lrl::ValidateLevel::full : lrl::ValidateLevel::quick;
    if (cli.tamper) lrl::testing::normalization_tamper = 1e-4;

    std::vector<lrl::CheckResult> checks;
    try {
        checks = lrl::run_validation(level, resolve_threads(cli.threads), cli.seed);
    } catch (const std::exception& e) {
        os << "validation aborted: " << e.what() << "\n";
        return 1;
    }

    int failures = 0;
    if (cli.json) {
        nlohmann::ordered_json j;
        j["schema_version"] = "1";
        j["command"] = "validate";
        j["params"] = {{"level", cli.level}, {"seed", std::to_string(cli.seed)}};
        auto rows = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
            if (!c.pass) ++failures;
            rows.push_back({{"name", c.name},
                            {"pass", c.pass},
                            {"metric", c.metric},
                            {"bound", c.bound},
                            {"seconds", c.seconds},
                            {"note", c.note}});
        }
        j["checks"] = rows;
        os << j.dump(2) << "\n";
    } else {
        for (const auto& c : checks) {
            if (!c.pass) ++failures;
            char line[256];
            std::snprintf(line, sizeof line, "%-4s  %-52s  metric %.3e  bound %.3e  %6.2fs",
                          c.pass ? "PASS" : "FAIL", c.name.c_str(), c.metric, c.bound,
                          c.seconds);
            os << line;
            if (!c.note.empty()) os << "  [" << c.note << "]";
            os << "\n";
        }
        if (failures == 0)
            os << "all " << checks.size() << " checks passed\n";
        else
            os << failures << " of " << checks.size() << " checks failed\n";
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Largest-eigenvalue statistics of the spiked two-Wishart ratio "
                 "and the matching largest-root detector"};
    app.require_subcommand(1);
    Cli cli;

    auto* cdf_cmd = app.add_subcommand(
        "cdf", "Exact CDF of the largest whitened eigenvalue");
    cdf_cmd->add_option("--m", cli.m, "matrix dimension")->required();
    cdf_cmd->add_option("--n", cli.n, "noise-only sample count")->required();
    cdf_cmd->add_option("--p", cli.p, "signal-bearing sample count")->required();
    cdf_cmd->add_option("--eta", cli.eta, "spike strength (linear)");
    cdf_cmd->add_option("--t", cli.t, "single evaluation point");
    cdf_cmd->add_option("--t-min", cli.t_min, "grid start (default: 0.05% mass)");
    cdf_cmd->add_option("--t-max", cli.t_max, "grid end (default: 99.95% mass)");
    cdf_cmd->add_option("--points", cli.points, "grid size (default 50)");

    auto* roc_cmd = app.add_subcommand("roc", "Analytic ROC via threshold inversion");
    roc_cmd->add_option("--m", cli.m)->required();
    roc_cmd->add_option("--n", cli.n)->required();
    roc_cmd->add_option("--p", cli.p)->required();
    roc_cmd->add_option("--snr-db", cli.snr_db, "SNR in dB")->required();
    roc_cmd->add_option("--points", cli.points, "P_F grid size (default 99)");

    auto* bal_cmd = app.add_subcommand(
        "roc-balanced", "Closed-form ROC for the balanced case m = n");
    bal_cmd->add_option("--m", cli.m)->required();
    bal_cmd->add_option("--p", cli.p)->required();
    bal_cmd->add_option("--snr-db", cli.snr_db, "SNR in dB")->required();
    bal_cmd->add_option("--points", cli.points, "P_F grid size (default 99)");

    auto* opt_cmd = app.add_subcommand(
        "optimal-p", "Sample-count bracket, approximation, and exact argmax");
    opt_cmd->add_option("--pf", cli.pf, "false-alarm level")->required();
    opt_cmd->add_option("--snr-db", cli.snr_db, "SNR in dB")->required();
    opt_cmd->add_option("--nu", cli.nu, "dimension-to-samples ratio m/p")->required();

    auto* sim_cmd = app.add_subcommand(
        "simulate", "Monte Carlo draws vs the analytic CDF or ROC");
    sim_cmd->add_option("--m", cli.m)->required();
    sim_cmd->add_option("--n", cli.n)->required();
    sim_cmd->add_option("--p", cli.p)->required();
    auto* sim_eta = sim_cmd->add_option("--eta", cli.eta, "spike (CDF mode)");
    auto* sim_snr = sim_cmd->add_option("--snr-db", cli.snr_db, "SNR (ROC mode)");
    sim_eta->excludes(sim_snr);
    sim_cmd->add_option("--trials", cli.trials, "number of draws (default 10000)");
    auto* sim_seed = sim_cmd->add_option("--seed", cli.seed, "RNG seed");
    sim_cmd->add_option("--threads", cli.threads, "worker threads (default: all)");
    sim_cmd->add_option("--points", cli.points, "output grid size");
    sim_cmd->add_option("--t-min", cli.t_min, "CDF-mode grid start");
    sim_cmd->add_option("--t-max", cli.t_max, "CDF-mode grid end");

    auto* val_cmd = app.add_subcommand("validate", "Cross-check suite");
    val_cmd->add_option("--level", cli.level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    auto* val_seed = val_cmd->add_option("--seed", cli.seed, "RNG seed");
    val_cmd->add_option("--threads", cli.threads, "worker threads (default: all)");
    val_cmd->add_flag("--tamper", cli.tamper)->group("");  // fault injection

    for (CLI::App* sub : {cdf_cmd, roc_cmd, bal_cmd, opt_cmd, sim_cmd, val_cmd}) {
        sub->add_flag("--json", cli.json, "emit one JSON object instead of CSV");
        sub->add_option("--out", cli.out, "write output to a file");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cli.seed = resolve_seed(sim_seed->count() > 0 || val_seed->count() > 0,
                                cli.seed);

        std::ofstream file;
        if (!cli.out.empty()) {
            file.open(cli.out);
            if (!file) throw std::domain_error("cannot open output file " + cli.out);
        }
        std::ostream& os = cli.out.empty() ? std::cout : file;

        if (cdf_cmd->parsed()) return run_cdf(cli, cdf_cmd->count("--t") > 0, os);
        if (roc_cmd->parsed()) return run_roc(cli, os);
        if (bal_cmd->parsed()) return run_roc_balanced(cli, os);
        if (opt_cmd->parsed()) return run_optimal_p(cli, os);
        if (sim_cmd->parsed())
            return run_simulate(cli, sim_eta->count() > 0, sim_snr->count() > 0, os);
        if (val_cmd->parsed()) return run_validate(cli, os);
        throw std::domain_error("no subcommand selected");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
