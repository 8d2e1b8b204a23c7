// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "ofdmim/cli.hpp"
#include "ofdmim/curve.hpp"
#include "ofdmim/density.hpp"
#include "ofdmim/mc.hpp"
#include "ofdmim/multicell.hpp"
#include "ofdmim/parallel.hpp"
#include "ofdmim/singlecell.hpp"
#include "ofdmim/units.hpp"

namespace ofdmim::cli {

namespace {

namespace fs = std::filesystem;

// stream tags for per-point seeds; disjoint from the module-level Stream values
constexpr std::uint64_t seed_index_error = 0x1de0;
constexpr std::uint64_t seed_sinr = 0x5140;
constexpr std::uint64_t seed_ici = 0x1c10;
constexpr std::uint64_t seed_em = 0xe300;
constexpr std::uint64_t seed_sum_rate = 0x5a40;

std::string num(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

class Writer {
public:
    Writer(const RunConfig& cfg, std::uint64_t trials) : cfg_(cfg)
    {
        fs::create_directories(cfg.out_dir);
        header_.push_back("ofdmim-cli artifact_version=" + std::string(artifact_version));
        header_.push_back("command=" + cfg.command + " seed=" + std::to_string(cfg.seed)
                          + " trials=" + (trials ? std::to_string(trials) : std::string("n/a")));
        for (const auto& [key, value] : describe(cfg)) {
            header_.push_back(key + "=" + value);
        }
    }

    fs::path csv(const std::string& name, const CurveTable& table, const std::vector<std::string>& extra = {})
    {
        table.validate();
        auto meta = header_;
        meta.insert(meta.end(), extra.begin(), extra.end());
        const auto path = cfg_.out_dir / (name + ".csv");
        std::ofstream os(path, std::ios::binary);
        if (!os) {
            throw std::runtime_error("cannot write " + path.string());
        }
        table.write_csv(os, meta);
        written_.push_back(path);
        if (cfg_.gnuplot) {
            gnuplot(name, table);
        }
        return path;
    }

    fs::path text(const std::string& name, const std::string& body)
    {
        const auto path = cfg_.out_dir / name;
        std::ofstream os(path, std::ios::binary);
        if (!os) {
            throw std::runtime_error("cannot write " + path.string());
        }
        os << body;
        written_.push_back(path);
        return path;
    }

    std::vector<fs::path> files() const { return written_; }

private:
    void gnuplot(const std::string& name, const CurveTable& table)
    {
        std::ostringstream gp;
        gp << "# " << header_.front() << "\n";
        gp << "set datafile separator ','\n";
        gp << "set key autotitle columnhead\n";
        gp << "set xlabel '" << table.x_name << "'\n";
        gp << "set grid\n";
        gp << "plot";
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            gp << (i ? ", \\\n     " : " ") << (i ? "''" : "'" + name + ".csv'") << " using 1:" << i + 2
               << " with lines";
        }
        gp << "\n";
        text(name + ".gp", gp.str());
    }

    const RunConfig& cfg_;
    std::vector<std::string> header_;
    std::vector<fs::path> written_;
};

TrialPlan plan_for(const RunConfig& cfg, std::uint64_t trials, std::uint64_t seed)
{
    TrialPlan plan;
    plan.trials = trials;
    plan.master_seed = seed;
    plan.chunk_size = cfg.chunk_size;
    plan.workers = cfg.threads;
    plan.validate();
    return plan;
}

std::vector<int> nf_or(const RunConfig& cfg, std::vector<int> fallback)
{
    return cfg.nf.empty() ? fallback : cfg.nf;
}

int single_nf(const RunConfig& cfg)
{
    const auto nfs = nf_or(cfg, {4});
    if (nfs.size() != 1) {
        throw std::invalid_argument(cfg.command + " takes a single N_F");
    }
    return nfs.front();
}

std::vector<double> grid_or(const RunConfig& cfg, std::string_view fallback)
{
    return parse_db_list(cfg.snr_db.empty() ? fallback : std::string_view(cfg.snr_db));
}

mc::IciScenario ici_scenario(const RunConfig& cfg, int n_f)
{
    mc::IciScenario sc;
    sc.hex = {cfg.hex_n_b, cfg.hex_isd, cfg.multicell.serving_distance};
    sc.model = {cfg.multicell.alpha, cfg.multicell.tx_power};
    sc.n_f = n_f;
    sc.qam_order = cfg.qam_order;
    sc.noise_var = cfg.multicell.noise_var;
    sc.validate();
    return sc;
}

mog::EmSettings em_for(const RunConfig& cfg)
{
    auto em = cfg.em;
    em.seed = derive_seed(cfg.seed, seed_em, 0);
    return em;
}

std::vector<fs::path> cmd_index_error(const RunConfig& cfg)
{
    const auto nfs = nf_or(cfg, {2, 4, 8, 16});
    const auto grid = grid_or(cfg, "-10:1:30");
    const auto trials = cfg.trials_or(100000);
    Writer out(cfg, trials);

    CurveTable combined{"index_error", Provenance::simulated, "snr_db", grid, {}};
    std::vector<std::string> gaps;
    for (int n_f : nfs) {
        std::vector<double> analytic;
        std::vector<double> simulated;
        std::vector<double> std_error;
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double rho = db_to_linear(grid[i]);
            analytic.push_back(singlecell::index_error_prob(rho, n_f));
            const auto plan = plan_for(cfg, trials, derive_seed(cfg.seed, seed_index_error + n_f, i));
            const auto est = mc::simulate_index_error(rho, n_f, plan);
            simulated.push_back(est.value);
            std_error.push_back(est.std_error);
            if (est.std_error > 0.0) {
                worst = std::max(worst, std::abs(est.value - analytic.back()) / est.std_error);
            }
        }
        const auto tag = "nf" + std::to_string(n_f);
        CurveTable a{"index_error_" + tag + "_analytic", Provenance::analytic, "snr_db", grid, {}};
        a.add_column("p_err", analytic);
        out.csv(a.label, a);
        CurveTable s{"index_error_" + tag + "_simulated", Provenance::simulated, "snr_db", grid, {}};
        s.add_column("p_err", simulated);
        s.add_column("std_error", std_error);
        gaps.push_back("max_gap_in_std_errors_" + tag + "=" + num(worst));
        out.csv(s.label, s, {gaps.back()});
        combined.add_column("analytic_" + tag, analytic);
        combined.add_column("simulated_" + tag, simulated);
        combined.add_column("std_error_" + tag, std_error);
    }
    out.csv(combined.label, combined, gaps);
    return out.files();
}

std::vector<fs::path> cmd_rates(const RunConfig& cfg)
{
    const auto nfs = nf_or(cfg, {2, 4, 8, 16});
    const auto grid = grid_or(cfg, "-10:1:40");
    Writer out(cfg, 0);

    for (int n_f : nfs) {
        const auto points = singlecell::rate_total({n_f, grid});
        CurveTable t{"rates_nf" + std::to_string(n_f), Provenance::analytic, "snr_db", grid, {}};
        std::vector<double> r1, p_err, r2, total;
        for (const auto& p : points) {
            r1.push_back(p.r1);
            p_err.push_back(p.p_err);
            r2.push_back(p.r2);
            total.push_back(p.r_total);
        }
        t.add_column("r1", r1);
        t.add_column("p_err", p_err);
        t.add_column("r2", r2);
        t.add_column("r_total", total);
        out.csv(t.label, t);
    }

    // r2 against N_F (powers of two) at fixed SNRs, argmax marked
    std::vector<double> counts;
    for (int n = 2; n <= cfg.rates_nf_max && n <= singlecell::max_subcarriers; n *= 2) {
        counts.push_back(n);
    }
    CurveTable by_nf{"rates_vs_nf", Provenance::analytic, "n_f", counts, {}};
    for (double db : parse_db_list(cfg.rates_fixed_snr_db)) {
        const double rho = db_to_linear(db);
        const int best = singlecell::optimal_nf(rho, static_cast<int>(counts.back()));
        std::vector<double> r2;
        std::vector<double> mark;
        for (double n : counts) {
            r2.push_back(singlecell::rate_index(rho, static_cast<int>(n)));
            mark.push_back(static_cast<int>(n) == best ? 1.0 : 0.0);
        }
        by_nf.add_column("r2_snr" + num(db) + "db", r2);
        by_nf.add_column("argmax_snr" + num(db) + "db", mark);
    }
    out.csv(by_nf.label, by_nf);

    CurveTable opt{"optimal_nf", Provenance::analytic, "snr_db", grid, {}};
    std::vector<double> best;
    std::vector<double> r2_best;
    std::vector<double> at_cap;
    for (double db : grid) {
        const double rho = db_to_linear(db);
        const int n = singlecell::optimal_nf(rho, static_cast<int>(counts.back()));
        best.push_back(n);
        r2_best.push_back(singlecell::rate_index(rho, n));
        at_cap.push_back(n == static_cast<int>(counts.back()) ? 1.0 : 0.0);
    }
    opt.add_column("optimal_nf", best);
    opt.add_column("r2_at_optimum", r2_best);
    opt.add_column("at_search_cap", at_cap);
    out.csv(opt.label, opt, {"search=powers_of_two nf_max=" + num(counts.back())});
    return out.files();
}

std::vector<fs::path> cmd_sinr_cdf(const RunConfig& cfg)
{
    const auto nfs = nf_or(cfg, {1, 2, 4, 8});
    const auto grid = grid_or(cfg, "-10:0.5:40");
    const auto trials = cfg.trials_or(100000);
    Writer out(cfg, trials);

    CurveTable combined{"sinr_cdf", Provenance::simulated, "sinr_db", grid, {}};
    std::vector<std::string> sups;
    for (int n_f : nfs) {
        auto mc_cfg = cfg.multicell;
        mc_cfg.n_f = n_f;
        auto analytic = multicell::sinr_cdf_curve(mc_cfg, grid);
        analytic.x_name = "sinr_db";
        const auto tag = "nf" + std::to_string(n_f);
        analytic.label = "sinr_cdf_" + tag + "_analytic";
        out.csv(analytic.label, analytic);

        auto draws = mc::simulate_sinr(mc_cfg, plan_for(cfg, trials, derive_seed(cfg.seed, seed_sinr, n_f)));
        std::sort(draws.begin(), draws.end());
        double sup = 0.0;
        const double n = static_cast<double>(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i) {
            const double f = multicell::analytic_sinr_cdf(mc_cfg, draws[i]);
            sup = std::max({sup, std::abs((i + 1) / n - f), std::abs(i / n - f)});
        }
        std::vector<double> ecdf;
        for (double db : grid) {
            const auto below = std::upper_bound(draws.begin(), draws.end(), db_to_linear(db)) - draws.begin();
            ecdf.push_back(static_cast<double>(below) / n);
        }
        CurveTable empirical{"sinr_cdf_" + tag + "_empirical", Provenance::simulated, "sinr_db", grid, {}};
        empirical.add_column("cdf", ecdf);
        sups.push_back("sup_distance_" + tag + "=" + num(sup));
        out.csv(empirical.label, empirical, {sups.back()});
        combined.add_column("analytic_" + tag, analytic.column("cdf"));
        combined.add_column("empirical_" + tag, ecdf);
    }
    out.csv(combined.label, combined, sups);
    return out.files();
}

std::vector<fs::path> cmd_ici_pdf(const RunConfig& cfg)
{
    const auto sc = ici_scenario(cfg, single_nf(cfg));
    const auto trials = cfg.trials_or(100000);
    Writer out(cfg, trials);

    const auto psi = mc::sample_noise_plus_ici(sc, plan_for(cfg, trials, derive_seed(cfg.seed, seed_ici, 0)));
    const auto fit = mog::em_fit(psi, em_for(cfg));
    for (const auto& w : fit.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    const double power = psi.mean_power();
    const double half = 4.0 * std::sqrt(power / 2.0);
    const auto hist = real_part_histogram(psi, -half, half, cfg.hist_bins);
    const mog::MoGDist gauss{{1.0}, {power}};

    std::vector<double> centers;
    std::vector<double> h;
    std::vector<double> fitted;
    std::vector<double> baseline;
    double mass = hist.below + hist.above;
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        centers.push_back(hist.center(i));
        h.push_back(hist.density(i));
        mass += h.back() * hist.bin_width();
        fitted.push_back(mog::real_marginal_pdf(fit.dist, centers.back()));
        baseline.push_back(mog::real_marginal_pdf(gauss, centers.back()));
    }
    CurveTable t{"ici_pdf", Provenance::fitted, "re_psi", centers, {}};
    t.add_column("histogram", h);
    t.add_column("mog_fit", fitted);
    t.add_column("gaussian", baseline);

    auto cdf_of = [](const mog::MoGDist& d) { return [&d](double x) { return mog::real_marginal_cdf(d, x); }; };
    std::vector<std::string> meta{
        "scenario " + sc.describe(),
        "histogram_mass=" + num(mass),
        "binned_l1_mog_fit=" + num(binned_l1(hist, cdf_of(fit.dist))),
        "binned_l1_gaussian=" + num(binned_l1(hist, cdf_of(gauss))),
    };
    if (cfg.exact_enum) {
        const auto exact = mog::exact_mog_enumeration(sc.interferer_powers(), sc.n_f, sc.noise_var);
        std::vector<double> e;
        for (double x : centers) {
            e.push_back(mog::real_marginal_pdf(exact, x));
        }
        t.add_column("exact", e);
        meta.push_back("binned_l1_exact=" + num(binned_l1(hist, cdf_of(exact))));
        meta.push_back("exact_components=" + std::to_string(exact.size()));
    }
    for (std::size_t k = 0; k < fit.dist.size(); ++k) {
        meta.push_back("mog_component_" + std::to_string(k) + " weight=" + num(fit.dist.weights[k])
                       + " variance=" + num(fit.dist.variances[k]));
    }
    out.csv(t.label, t, meta);
    out.text("ici_pdf_mog.json", mog::to_json(fit.dist, {sc.describe()}) + "\n");
    return out.files();
}

std::vector<fs::path> cmd_sum_rate(const RunConfig& cfg)
{
    const int n_f = single_nf(cfg);
    multicell::SumRateSweep sweep;
    sweep.scenario = ici_scenario(cfg, n_f);
    sweep.snr_db = grid_or(cfg, "-10:5:40");
    const auto trials = cfg.trials_or(50000);
    sweep.plan = plan_for(cfg, trials, derive_seed(cfg.seed, seed_sum_rate, 0));
    sweep.em = em_for(cfg);
    Writer out(cfg, trials);

    const auto results = multicell::run_sum_rate_pipeline(sweep);
    const auto single = singlecell::rate_total({std::max(n_f, 2), sweep.snr_db});
    CurveTable t{"sum_rate", Provenance::fitted, "snr_db", sweep.snr_db, {}};
    std::vector<double> upper, printed, mi, se, reference, noise;
    for (std::size_t i = 0; i < results.size(); ++i) {
        upper.push_back(results[i].r3_upper);
        printed.push_back(results[i].r3_upper_printed);
        mi.push_back(results[i].mi_estimate);
        se.push_back(results[i].mi_std_error);
        reference.push_back(single[i].r_total);
        noise.push_back(results[i].noise_var);
    }
    t.add_column("r3_upper", upper);
    t.add_column("r3_upper_printed", printed);
    t.add_column("mi_estimate", mi);
    t.add_column("mi_std_error", se);
    t.add_column("single_cell_r_total", reference);
    t.add_column("noise_var", noise);
    out.csv(t.label, t, {"scenario " + sweep.scenario.describe(), "snr = P_T d^-alpha / noise_var"});
    return out.files();
}

} // namespace

std::vector<fs::path> run_command(const RunConfig& cfg)
{
    cfg.validate();
    if (cfg.command == "index-error") {
        return cmd_index_error(cfg);
    }
    if (cfg.command == "rates") {
        return cmd_rates(cfg);
    }
    if (cfg.command == "sinr-cdf") {
        return cmd_sinr_cdf(cfg);
    }
    if (cfg.command == "ici-pdf") {
        return cmd_ici_pdf(cfg);
    }
    return cmd_sum_rate(cfg);
}

int main(int argc, char** argv)
{
    CLI::App app{"OFDM index modulation: figure data and Monte Carlo cross-checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    unsigned threads = 0;
    std::string out_dir;
    std::string nf_list;
    std::string snr_range;
    std::vector<std::string> settings;
    bool exact_enum = false;
    bool gnuplot = false;
    std::vector<CLI::Option*> seed_opts, trials_opts, threads_opts, out_opts, nf_opts, snr_opts;

    const std::vector<std::pair<std::string, std::string>> help{
        {"index-error", "index detection error probability, closed form and simulated"},
        {"rates", "symbol, index and total rates; index rate against N_F and the optimal N_F"},
        {"sinr-cdf", "SINR CDF under a Poisson interferer field, closed form and simulated"},
        {"ici-pdf", "real-part density of noise plus ICI: histogram, MoG fit, Gaussian baseline"},
        {"sum-rate", "multi-cell sum-rate upper bound, MI estimate and single-cell reference"},
    };
    for (const auto& [name, text] : help) {
        auto* sub = app.add_subcommand(name, text);
        sub->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
        seed_opts.push_back(sub->add_option("--seed", seed, "master seed"));
        trials_opts.push_back(sub->add_option("--trials", trials, "Monte Carlo trials per point"));
        threads_opts.push_back(sub->add_option("--threads", threads, "worker threads (results do not change)"));
        out_opts.push_back(sub->add_option("--out", out_dir, "output directory"));
        nf_opts.push_back(sub->add_option("--nf", nf_list, "comma list of subcarrier counts"));
        snr_opts.push_back(sub->add_option("--snr-db", snr_range, "start:step:stop or comma list (dB)"));
        sub->add_option("--set", settings, "override a config key, KEY=VALUE (repeatable)");
        sub->add_flag("--exact-enum", exact_enum, "add the exact enumerated mixture (ici-pdf)");
        sub->add_flag("--gnuplot", gnuplot, "also write a gnuplot script per CSV");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }
    auto given = [](const std::vector<CLI::Option*>& opts) {
        return std::any_of(opts.begin(), opts.end(), [](const CLI::Option* o) { return o->count() > 0; });
    };

    try {
        RunConfig cfg;
        cfg.command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) {
            load_config_file(cfg, config_path);
        }
        for (const auto& s : settings) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("--set expects KEY=VALUE, got '" + s + "'");
            }
            apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        if (given(seed_opts)) {
            cfg.seed = seed;
        }
        if (given(trials_opts)) {
            cfg.trials = trials;
        }
        if (given(threads_opts)) {
            cfg.threads = threads;
        }
        if (given(out_opts)) {
            cfg.out_dir = out_dir;
        }
        if (given(nf_opts)) {
            cfg.nf = parse_int_list(nf_list);
        }
        if (given(snr_opts)) {
            apply_setting(cfg, "run.snr_db", snr_range);
        }
        cfg.exact_enum = cfg.exact_enum || exact_enum;
        cfg.gnuplot = cfg.gnuplot || gnuplot;

        for (const auto& path : run_command(cfg)) {
            std::cout << path.string() << "\n";
        }
        return exit_ok;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}

} // namespace ofdmim::cli
