// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ofdmim/cli.hpp"
#include "ofdmim/curve.hpp"
#include "ofdmim/singlecell.hpp"

using namespace ofdmim;
using namespace ofdmim::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("ofdmim_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CurveTable load(const fs::path& p)
{
    std::ifstream in(p);
    return read_csv(in);
}

} // namespace

TEST_CASE("dB and integer lists")
{
    const auto r = parse_db_list("-10:5:10");
    REQUIRE(r.size() == 5);
    CHECK(r.front() == -10.0);
    CHECK(r.back() == 10.0);
    CHECK(parse_db_list(" 3, 7.5 ,-1") == std::vector<double>{3.0, 7.5, -1.0});
    CHECK(parse_db_list("4") == std::vector<double>{4.0});
    CHECK_THROWS_AS(parse_db_list("1:0:5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_db_list("5:1:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_db_list("1:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_db_list("a,b"), std::invalid_argument);
    CHECK(parse_int_list("2,4,8") == std::vector<int>{2, 4, 8});
    CHECK_THROWS_AS(parse_int_list("2,,8"), std::invalid_argument);
}

TEST_CASE("config keys, files and metadata")
{
    RunConfig cfg;
    apply_setting(cfg, "multicell.alpha", "3.5");
    apply_setting(cfg, " em.q_prime ", " 3 ");
    apply_setting(cfg, "run.nf", "2,8");
    CHECK(cfg.multicell.alpha == 3.5);
    CHECK(cfg.em.q_prime == 3);
    CHECK(cfg.nf == std::vector<int>{2, 8});
    CHECK_THROWS_AS(apply_setting(cfg, "multicell.colour", "1"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(cfg, "hex.n_b", "nineteen"), std::invalid_argument);
    CHECK_THROWS_AS(apply_setting(cfg, "run.exact_enum", "maybe"), std::invalid_argument);

    const auto dir = scratch("config");
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "run.cfg");
        f << "# scenario\n\nmulticell.density = 2e-4   # per m^2\nrun.seed=99\nrun.snr_db = 0:10:20\n";
    }
    RunConfig from_file;
    load_config_file(from_file, dir / "run.cfg");
    CHECK(from_file.multicell.density == 2e-4);
    CHECK(from_file.seed == 99);
    CHECK(from_file.snr_db == "0:10:20");
    {
        std::ofstream f(dir / "bad.cfg");
        f << "run.seed = 1\nno equals sign here\n";
    }
    CHECK_THROWS_WITH_AS(load_config_file(from_file, dir / "bad.cfg"), doctest::Contains("bad.cfg:2"),
                         std::invalid_argument);
    CHECK_THROWS_AS(load_config_file(from_file, dir / "missing.cfg"), std::invalid_argument);

    // execution-only keys stay out of file headers
    RunConfig a;
    RunConfig b;
    b.threads = 4;
    b.out_dir = "elsewhere";
    CHECK(describe(a) == describe(b));
    for (const auto& [key, value] : describe(a)) {
        CHECK(key != "run.threads");
        CHECK(key != "run.out");
    }
    CHECK(known_keys().size() == describe(a).size() + 2);
}

TEST_CASE("RunConfig validation")
{
    RunConfig cfg;
    cfg.command = "index-error";
    CHECK_NOTHROW(cfg.validate());
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.trials.reset();
    cfg.multicell.alpha = 2.0;
    CHECK_THROWS_AS(cfg.validate(), std::domain_error);
    cfg.multicell.alpha = 3.0;
    cfg.command = "plot";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("index-error command writes analytic and simulated pairs")
{
    RunConfig cfg;
    cfg.command = "index-error";
    cfg.out_dir = scratch("index");
    cfg.snr_db = "-10:10:30";
    cfg.trials = 50000;
    const auto files = run_command(cfg);
    CHECK(files.size() == 9);
    for (int n_f : {2, 4, 8, 16}) {
        const auto tag = "nf" + std::to_string(n_f);
        const auto a = load(cfg.out_dir / ("index_error_" + tag + "_analytic.csv"));
        const auto s = load(cfg.out_dir / ("index_error_" + tag + "_simulated.csv"));
        CHECK(a.provenance == Provenance::analytic);
        CHECK(s.provenance == Provenance::simulated);
        REQUIRE(a.rows() == 5);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            CHECK(std::abs(a.column("p_err")[i] - s.column("p_err")[i]) < 3.0 * s.column("std_error")[i]);
        }
    }
    const auto text = slurp(cfg.out_dir / "index_error.csv");
    CHECK(text.find("# ofdmim-cli artifact_version=") == 0);
    CHECK(text.find("command=index-error seed=1 trials=50000") != std::string::npos);

    cfg.nf = {1};
    CHECK_THROWS_AS(run_command(cfg), std::domain_error);
}

TEST_CASE("rates command")
{
    RunConfig cfg;
    cfg.command = "rates";
    cfg.out_dir = scratch("rates");
    cfg.nf = {4};
    cfg.snr_db = "-10:10:30";
    cfg.rates_nf_max = 64;
    run_command(cfg);
    const auto t = load(cfg.out_dir / "rates_nf4.csv");
    const auto points = singlecell::rate_total({4, t.x});
    for (std::size_t i = 0; i < t.rows(); ++i) {
        CHECK(points[i].r_total == points[i].r1 + points[i].r2);
        CHECK(t.column("r_total")[i] == doctest::Approx(t.column("r1")[i] + t.column("r2")[i]).epsilon(1e-11));
    }
    const auto opt = load(cfg.out_dir / "optimal_nf.csv");
    const auto& best = opt.column("optimal_nf");
    for (std::size_t i = 1; i < best.size(); ++i) {
        CHECK(best[i] >= best[i - 1]);
    }
    const auto by_nf = load(cfg.out_dir / "rates_vs_nf.csv");
    CHECK(by_nf.x.back() == 64.0);
    for (const auto& [name, values] : by_nf.columns) {
        if (name.rfind("argmax_", 0) == 0) {
            double marks = 0.0;
            for (double v : values) {
                marks += v;
            }
            CHECK(marks == 1.0);
        }
    }
}

TEST_CASE("ici-pdf and sum-rate commands")
{
    RunConfig cfg;
    cfg.command = "ici-pdf";
    cfg.out_dir = scratch("ici");
    cfg.trials = 20000;
    cfg.hex_n_b = 5;
    cfg.exact_enum = true;
    cfg.em.restarts = 2;
    run_command(cfg);
    const auto t = load(cfg.out_dir / "ici_pdf.csv");
    const double width = t.x[1] - t.x[0];
    double mass = 0.0;
    for (double d : t.column("histogram")) {
        mass += d * width;
    }
    CHECK(mass <= 1.0 + 1e-12);
    CHECK(mass > 0.99);
    CHECK(t.columns.size() == 4);
    const auto meta = slurp(cfg.out_dir / "ici_pdf.csv");
    CHECK(meta.find("binned_l1_exact=") != std::string::npos);
    const auto json = slurp(cfg.out_dir / "ici_pdf_mog.json");
    CHECK(mog::from_json(json).size() <= 4);

    cfg.command = "sum-rate";
    cfg.snr_db = "10,30";
    cfg.nf = {2, 4};
    CHECK_THROWS_AS(run_command(cfg), std::invalid_argument);
    cfg.nf = {4};
    run_command(cfg);
    const auto s = load(cfg.out_dir / "sum_rate.csv");
    REQUIRE(s.rows() == 2);
    const auto ref = singlecell::rate_total({4, s.x});
    for (std::size_t i = 0; i < s.rows(); ++i) {
        CHECK(s.column("mi_estimate")[i] <= s.column("r3_upper")[i] + 3.0 * s.column("mi_std_error")[i]);
        CHECK(s.column("single_cell_r_total")[i] == doctest::Approx(ref[i].r_total).epsilon(1e-11));
    }
}

TEST_CASE("command output is byte-identical across reruns and thread counts")
{
    RunConfig cfg;
    cfg.command = "sinr-cdf";
    cfg.trials = 3000;
    cfg.snr_db = "-10:5:40";
    cfg.out_dir = scratch("det1");
    const auto first = run_command(cfg);
    cfg.out_dir = scratch("det2");
    cfg.threads = 3;
    const auto second = run_command(cfg);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].filename() == second[i].filename());
        CHECK(slurp(first[i]) == slurp(second[i]));
    }
}
