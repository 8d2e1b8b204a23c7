// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ofdmim/geometry.hpp"
#include "ofdmim/parallel.hpp"

using namespace ofdmim;
using namespace ofdmim::geometry;

namespace {

struct CountStats {
    double mean = 0.0;
    double var = 0.0;
};

CountStats count_stats(const std::vector<double>& counts)
{
    CountStats st;
    for (double c : counts) {
        st.mean += c;
    }
    st.mean /= static_cast<double>(counts.size());
    for (double c : counts) {
        st.var += (c - st.mean) * (c - st.mean);
    }
    st.var /= static_cast<double>(counts.size() - 1);
    return st;
}

} // namespace

TEST_CASE("sample_ppp count is Poisson with mean lambda pi R^2")
{
    const PppConfig cfg{1e-4, 2000.0};
    const double expected = 1e-4 * std::numbers::pi * 2000.0 * 2000.0;
    CHECK(expected == doctest::Approx(1256.637).epsilon(1e-6));
    Rng rng(2024);
    std::vector<double> counts;
    double inner = 0.0;
    double total = 0.0;
    double farthest = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto pts = sample_ppp(cfg, rng);
        counts.push_back(static_cast<double>(pts.size()));
        for (const auto& p : pts) {
            farthest = std::max(farthest, p.norm());
            inner += p.norm() < 1000.0 ? 1.0 : 0.0;
        }
        total += static_cast<double>(pts.size());
    }
    CHECK_LE(farthest, 2000.0);
    const auto st = count_stats(counts);
    CHECK(std::abs(st.mean / expected - 1.0) < 0.01);
    CHECK(std::abs(st.var / st.mean - 1.0) < 0.05);
    // uniform on the disc: a quarter of the points fall inside R/2
    CHECK(std::abs(inner / total - 0.25) < 0.002);
}

TEST_CASE("sample_ppp is reproducible from the seed")
{
    const auto cfg = PppConfig::with_default_window(1e-4);
    Rng a(77);
    Rng b(77);
    const auto pa = sample_ppp(cfg, a);
    const auto pb = sample_ppp(cfg, b);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa[i].x == pb[i].x);
        CHECK(pa[i].y == pb[i].y);
    }
}

TEST_CASE("independent thinning by 1/N_F matches a PPP of density lambda/N_F")
{
    // two-sample chi-square on the count distributions
    const double lambda = 1e-4;
    const int n_f = 4;
    const double radius = 500.0;
    Rng rng_full(11);
    Rng rng_thin(12);
    Rng coin(13);
    std::bernoulli_distribution keep(1.0 / n_f);
    std::map<int, std::pair<double, double>> table;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        int kept = 0;
        for (std::size_t k = 0, n = sample_ppp({lambda, radius}, rng_full).size(); k < n; ++k) {
            kept += keep(coin) ? 1 : 0;
        }
        const int direct = static_cast<int>(sample_ppp({lambda / n_f, radius}, rng_thin).size());
        table[std::clamp(kept, 10, 30)].first += 1.0;
        table[std::clamp(direct, 10, 30)].second += 1.0;
    }
    double stat = 0.0;
    for (const auto& [cell, obs] : table) {
        const double pooled = obs.first + obs.second;
        const double e = pooled / 2.0;
        stat += (obs.first - e) * (obs.first - e) / e + (obs.second - e) * (obs.second - e) / e;
    }
    const boost::math::chi_squared dist(static_cast<double>(table.size() - 1));
    CHECK(stat < boost::math::quantile(dist, 0.999));
}

TEST_CASE("PppConfig validation")
{
    CHECK_THROWS_AS(PppConfig({0.0, 100.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(PppConfig({1e-4, 0.0}).validate(), std::invalid_argument);
    CHECK(default_window_radius(1e-4) == doctest::Approx(80.0 / std::sqrt(std::numbers::pi * 1e-4)));
}

TEST_CASE("hex_grid layout")
{
    const HexScenario sc;
    const auto sites = hex_grid(sc);
    REQUIRE(sites.size() == 19);
    CHECK(sites[0].norm() == 0.0);
    int ring1 = 0;
    for (const auto& p : sites) {
        ring1 += std::abs(p.norm() - 100.0) < 1e-9 ? 1 : 0;
    }
    CHECK(ring1 == 6);
    int corners = 0;
    int edges = 0;
    for (std::size_t i = 7; i < 19; ++i) {
        corners += std::abs(sites[i].norm() - 200.0) < 1e-9 ? 1 : 0;
        edges += std::abs(sites[i].norm() - 100.0 * std::sqrt(3.0)) < 1e-9 ? 1 : 0;
    }
    CHECK(corners == 6);
    CHECK(edges == 6);
    // every site has its 60-degree rotation in the layout
    const double c = 0.5;
    const double s = std::sqrt(3.0) / 2.0;
    for (const auto& p : sites) {
        const Point q{c * p.x - s * p.y, s * p.x + c * p.y};
        const bool found = std::any_of(sites.begin(), sites.end(), [&](Point r) { return distance(q, r) < 1e-9; });
        CHECK(found);
    }

    const auto dist = interferer_distances(sc);
    REQUIRE(dist.size() == 18);
    CHECK(*std::min_element(dist.begin(), dist.end()) == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(hex_grid({5, 100.0, 50.0}).size() == 5);
    CHECK(interferer_distances({1, 100.0, 50.0}).empty());
    CHECK_THROWS_AS(hex_grid({20, 100.0, 50.0}), std::invalid_argument);
    CHECK_THROWS_AS(hex_grid({19, 100.0, 100.0}), std::invalid_argument);
}

TEST_CASE("received_power path loss")
{
    const PathlossModel m;
    CHECK(received_power(m, 50.0) == doctest::Approx(3.2e-4).epsilon(1e-14));
    CHECK(received_power(m, 50.0) / received_power(m, 100.0) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK_THROWS_AS(PathlossModel({2.0, 40.0}).validate(), std::domain_error);
    CHECK_NOTHROW(PathlossModel({2.000001, 40.0}).validate());
    CHECK_THROWS_AS(received_power(m, 0.0), std::domain_error);
}
