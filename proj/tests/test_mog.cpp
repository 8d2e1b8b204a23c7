// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "ofdmim/mc.hpp"
#include "ofdmim/mog.hpp"
#include "oracles.hpp"

using namespace ofdmim;
using namespace ofdmim::mog;

namespace {

const double pi = std::numbers::pi;
const double e = std::numbers::e;

double radial_mass(const MoGDist& d)
{
    auto f = [&](double r) { return 2.0 * pi * r * mog_pdf(d, {r, 0.0}); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-12);
}

MoGDist random_mixture(std::mt19937_64& rng, int q)
{
    std::uniform_real_distribution<double> log_v(std::log(0.01), std::log(100.0));
    std::exponential_distribution<double> g(1.0);
    MoGDist d;
    double total = 0.0;
    for (int k = 0; k < q; ++k) {
        d.weights.push_back(g(rng) + 1e-3);
        d.variances.push_back(std::exp(log_v(rng)));
        total += d.weights.back();
    }
    for (double& w : d.weights) {
        w /= total;
    }
    return d;
}

} // namespace

TEST_CASE("mog_pdf values and normalisation")
{
    const MoGDist one{{1.0}, {2.5}};
    CHECK(mog_pdf(one, 0.0) == doctest::Approx(1.0 / (pi * 2.5)).epsilon(1e-15));
    const MoGDist two{{0.3, 0.7}, {1.0, 4.0}};
    CHECK(mog_pdf(two, 0.0) == doctest::Approx(0.3 / pi + 0.7 / (4.0 * pi)).epsilon(1e-15));
    CHECK(mog_pdf(two, {1.0, -2.0}) == doctest::Approx(std::exp(mog_log_pdf(two, 5.0))).epsilon(1e-14));
    CHECK(std::abs(radial_mass(one) - 1.0) < 1e-6);
    CHECK(std::abs(radial_mass(two) - 1.0) < 1e-6);
    CHECK(std::abs(radial_mass({{0.5, 0.25, 0.25}, {1e-6, 1.0, 1e4}}) - 1.0) < 1e-6);
    // far tail: no underflow in the log domain
    CHECK(std::isfinite(mog_log_pdf(two, 1e6)));
    CHECK(mog_log_pdf(two, 1e6) == doctest::Approx(std::log(0.7 / (4.0 * pi)) - 1e6 / 4.0));

    // real-part marginal is N(0, v/2)
    CHECK(real_marginal_pdf(one, 0.0) == doctest::Approx(1.0 / std::sqrt(pi * 2.5)));
    CHECK(real_marginal_cdf(two, 0.0) == doctest::Approx(0.5));
    CHECK(real_marginal_cdf(two, 100.0) == doctest::Approx(1.0));
    CHECK(real_marginal_l1(two, two) < 1e-12);
    const double l1 = real_marginal_l1(one, two);
    CHECK(l1 == doctest::Approx(real_marginal_l1(two, one)).epsilon(1e-9));
    CHECK(l1 > 0.0);
    CHECK(l1 < 2.0);
}

TEST_CASE("MoGDist validation")
{
    CHECK_NOTHROW(MoGDist({0.5, 0.5}, {1.0, 2.0}).validate());
    CHECK_THROWS_AS(MoGDist({0.5, 0.6}, {1.0, 2.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(MoGDist({0.5, 0.5}, {1.0, 0.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(MoGDist({1.0}, {1.0, 2.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(MoGDist({}, {}).validate(), std::invalid_argument);
}

TEST_CASE("exact_mog_enumeration")
{
    const double s2 = 7.5e-11;
    SUBCASE("no interferers")
    {
        const auto d = exact_mog_enumeration({}, 4, s2);
        REQUIRE(d.size() == 1);
        CHECK(d.weights[0] == 1.0);
        CHECK(d.variances[0] == s2);
    }
    SUBCASE("one interferer")
    {
        const std::vector<double> t{3.2e-4};
        const auto d = exact_mog_enumeration(t, 4, s2);
        REQUIRE(d.size() == 2);
        CHECK(d.weights[0] == doctest::Approx(0.75));
        CHECK(d.variances[0] == s2);
        CHECK(d.weights[1] == doctest::Approx(0.25));
        CHECK(d.variances[1] == doctest::Approx(s2 + 3.2e-4));
    }
    SUBCASE("three equal interferers merge to binomial weights")
    {
        const double t = 1e-5;
        const std::vector<double> powers{t, t, t};
        const auto d = exact_mog_enumeration(powers, 4, s2);
        REQUIRE(d.size() == 4);
        const double w[] = {27.0 / 64, 27.0 / 64, 9.0 / 64, 1.0 / 64};
        for (std::size_t k = 0; k < 4; ++k) {
            CHECK(d.weights[k] == doctest::Approx(w[k]).epsilon(1e-14));
            CHECK(d.variances[k] == doctest::Approx(s2 + k * t).epsilon(1e-12));
        }
    }
    SUBCASE("19-site layout")
    {
        mc::IciScenario sc;
        const auto powers = sc.interferer_powers();
        const auto d = exact_mog_enumeration(powers, 4, s2);
        double total = 0.0;
        for (double t : powers) {
            total += t;
        }
        CHECK(d.mean_power() == doctest::Approx(s2 + total / 4.0).epsilon(1e-12));
        for (std::size_t k = 1; k < d.size(); ++k) {
            CHECK(d.variances[k] > d.variances[k - 1]);
        }
        // all interferers on a separate subcarrier: weight (3/4)^18
        CHECK(d.weights[0] == doctest::Approx(std::pow(0.75, 18)).epsilon(1e-12));
    }
    SUBCASE("n_f = 1: every interferer collides")
    {
        const std::vector<double> powers{1.0, 2.0};
        const auto d = exact_mog_enumeration(powers, 1, 0.5);
        REQUIRE(d.size() == 1);
        CHECK(d.variances[0] == doctest::Approx(3.5));
    }
    std::vector<double> many(21, 1e-6);
    CHECK_THROWS_AS(exact_mog_enumeration(many, 4, s2), std::invalid_argument);
    CHECK_THROWS_AS(exact_mog_enumeration({}, 0, s2), std::invalid_argument);
    CHECK_THROWS_AS(exact_mog_enumeration({}, 4, 0.0), std::invalid_argument);
}

TEST_CASE("em_fit with one component is the sample mean power")
{
    const auto draws = sample_mog({{1.0}, {3.0}}, 5000, 1);
    EmSettings em;
    em.q_prime = 1;
    em.restarts = 1;
    const auto fit = em_fit(draws, em);
    REQUIRE(fit.dist.size() == 1);
    CHECK(fit.dist.weights[0] == 1.0);
    CHECK(fit.dist.variances[0] == doctest::Approx(draws.mean_power()).epsilon(1e-12));
    CHECK(fit.runs.at(0).iterations <= 2);
}

TEST_CASE("em_fit recovers a two-component mixture")
{
    const auto draws = sample_mog({{0.75, 0.25}, {1.0, 9.0}}, 100000, 2024);
    EmSettings em;
    em.q_prime = 2;
    const auto fit = em_fit(draws, em);
    REQUIRE(fit.dist.size() == 2);
    CHECK(std::abs(fit.dist.weights[0] - 0.75) < 0.02);
    CHECK(std::abs(fit.dist.weights[1] - 0.25) < 0.02);
    CHECK(std::abs(fit.dist.variances[0] / 1.0 - 1.0) < 0.05);
    CHECK(std::abs(fit.dist.variances[1] / 9.0 - 1.0) < 0.05);
    CHECK(fit.runs.size() == 5);
    CHECK(fit.log_likelihood == doctest::Approx(log_likelihood(fit.dist, draws)).epsilon(1e-9));
    for (const auto& run : fit.runs) {
        REQUIRE(run.loglik_trace.size() >= 2);
        for (std::size_t i = 1; i < run.loglik_trace.size(); ++i) {
            CHECK(run.loglik_trace[i] >= run.loglik_trace[i - 1] - 1e-9 * std::abs(run.loglik_trace[i - 1]));
        }
        for (double r : run.power_residuals) {
            CHECK(r < 1e-9);
        }
        CHECK(fit.log_likelihood >= run.final_loglik);
    }
    // reproducible
    const auto again = em_fit(draws, em);
    CHECK(again.dist.weights == fit.dist.weights);
    CHECK(again.dist.variances == fit.dist.variances);
}

TEST_CASE("em_fit on the enumerated 19-site noise plus ICI")
{
    mc::IciScenario sc;
    const auto exact = exact_mog_enumeration(sc.interferer_powers(), sc.n_f, sc.noise_var);
    const auto draws = sample_mog(exact, 100000, 31);
    EmSettings em;
    em.restarts = 2;
    const auto fit = em_fit(draws, em);
    CHECK(fit.dist.size() <= 4);
    CHECK(real_marginal_l1(fit.dist, exact) < 0.05);
}

TEST_CASE("em_fit input checks")
{
    EmSettings em;
    ComplexSampleSet zeros;
    zeros.samples.assign(100, {0.0, 0.0});
    CHECK_THROWS_AS(em_fit(zeros, em), std::invalid_argument);
    ComplexSampleSet few;
    few.samples.assign(39, {1.0, 0.0});
    CHECK_THROWS_AS(em_fit(few, em), std::invalid_argument);
    ComplexSampleSet same;
    same.samples.assign(1000, {0.0, 2.0});
    const auto fit = em_fit(same, em);
    REQUIRE(fit.dist.size() == 1);
    CHECK(fit.dist.variances[0] == doctest::Approx(4.0));
    em.q_prime = 0;
    CHECK_THROWS_AS(em.validate(), std::invalid_argument);
}

TEST_CASE("entropy bounds on a single Gaussian")
{
    const double v = 2.0;
    const MoGDist one{{1.0}, {v}};
    const double printed = 0.5 + std::log2(2.0 * pi * e * std::sqrt(v));
    const double complex = std::log2(pi * e * v);
    CHECK(entropy_lower_bound_conditional(one) == doctest::Approx(printed).epsilon(1e-15));
    CHECK(entropy_upper_bound(one) == doctest::Approx(printed).epsilon(1e-15));
    CHECK(entropy_lower_bound_conditional(one, EntropyConvention::complex) == doctest::Approx(complex).epsilon(1e-15));
    CHECK(entropy_upper_bound(one, EntropyConvention::complex) == doctest::Approx(complex).epsilon(1e-15));
    CHECK(entropy_exact_radial(one) == doctest::Approx(complex).epsilon(1e-10));

    const MoGDist halves{{0.5, 0.5}, {v, v}};
    CHECK(entropy_upper_bound(halves) - entropy_upper_bound(one) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(entropy_lower_bound_conditional(halves, EntropyConvention::complex)
          == doctest::Approx(entropy_exact_radial(halves)).epsilon(1e-10));
    CHECK_THROWS_AS(entropy_upper_bound({{1.0, 0.0}, {1.0, 2.0}}), std::domain_error);
}

TEST_CASE("entropy sandwich under the complex convention")
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        const auto d = random_mixture(rng, 1 + i % 6);
        const double h = entropy_exact_radial(d);
        CHECK(entropy_lower_bound_conditional(d, EntropyConvention::complex) <= h + 1e-9);
        CHECK(h <= entropy_upper_bound(d, EntropyConvention::complex) + 1e-9);
    }
    // permutation invariance
    const MoGDist a{{0.2, 0.3, 0.5}, {0.1, 10.0, 1.0}};
    const MoGDist b{{0.5, 0.2, 0.3}, {1.0, 0.1, 10.0}};
    CHECK(entropy_exact_radial(a) == doctest::Approx(entropy_exact_radial(b)).epsilon(1e-12));
}

TEST_CASE("entropy_exact_radial against a 2-D grid")
{
    const std::vector<std::pair<std::vector<double>, std::vector<double>>> cases{
        {{0.75, 0.25}, {1.0, 9.0}},
        {{0.4, 0.6}, {0.5, 2.0}},
    };
    for (const auto& [w, v] : cases) {
        const double grid = oracle::mixture_entropy_grid(w, v, 8.0 * std::sqrt(v.back()), 2000);
        CHECK(std::abs(entropy_exact_radial({w, v}) - grid) < 1e-4);
    }
}

TEST_CASE("sum_rate_upper_bound without interference")
{
    const MoGDist noise{{1.0}, {0.5}};
    const MoGDist received{{1.0}, {8.0}};
    CHECK(sum_rate_upper_bound(noise, received) == doctest::Approx(std::log2(4.0)).epsilon(1e-14));
    CHECK(sum_rate_upper_bound(noise, received, EntropyConvention::complex)
          == doctest::Approx(std::log2(16.0)).epsilon(1e-14));
}

TEST_CASE("MoG JSON round trip")
{
    const MoGDist d{{0.125, 0.875}, {1.0 / 3.0, 7.5e-11}};
    const auto text = to_json(d, {"hex19", "complex_total_variance"});
    MoGMetadata meta;
    const auto back = from_json(text, &meta);
    CHECK(back.weights == d.weights);
    CHECK(back.variances == d.variances);
    CHECK(meta.scenario == "hex19");
    CHECK(meta.convention == "complex_total_variance");
    CHECK_THROWS_AS(from_json("{\"weights\": [1.0]}"), std::invalid_argument);
    CHECK_THROWS_AS(from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(from_json("{\"weights\": [0.5], \"variances\": [1.0]}"), std::invalid_argument);
}
