// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/geometry.hpp"

#include <numbers>
#include <stdexcept>

namespace ofdmim::geometry {

double default_window_radius(double density)
{
    if (!(density > 0.0)) {
        throw std::invalid_argument("default_window_radius: density must be > 0");
    }
    return 80.0 / std::sqrt(std::numbers::pi * density);
}

PppConfig PppConfig::with_default_window(double density)
{
    return PppConfig{density, default_window_radius(density)};
}

void PppConfig::validate() const
{
    if (!(density > 0.0) || !std::isfinite(density)) {
        throw std::invalid_argument("PppConfig: density must be > 0");
    }
    if (!(window_radius > 0.0) || !std::isfinite(window_radius)) {
        throw std::invalid_argument("PppConfig: window_radius must be > 0");
    }
}

std::vector<Point> sample_ppp(const PppConfig& cfg, Rng& rng)
{
    cfg.validate();
    const double r2 = cfg.window_radius * cfg.window_radius;
    std::poisson_distribution<long> count_dist(cfg.density * std::numbers::pi * r2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const long count = count_dist(rng);
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double radius = cfg.window_radius * std::sqrt(unit(rng));
        const double angle = 2.0 * std::numbers::pi * unit(rng);
        points.push_back({radius * std::cos(angle), radius * std::sin(angle)});
    }
    return points;
}

void HexScenario::validate() const
{
    if (n_b < 1 || n_b > 19) {
        throw std::invalid_argument("HexScenario: n_b must lie in [1, 19] (center plus two rings)");
    }
    if (!(isd > 0.0)) {
        throw std::invalid_argument("HexScenario: isd must be > 0");
    }
    if (!(serving_distance > 0.0 && serving_distance < isd)) {
        throw std::invalid_argument("HexScenario: serving_distance must lie in (0, isd)");
    }
}

std::vector<Point> hex_grid(const HexScenario& scenario)
{
    scenario.validate();
    std::vector<Point> sites;
    sites.reserve(19);
    sites.push_back({0.0, 0.0});
    auto polar = [](double r, double deg) {
        const double a = deg * std::numbers::pi / 180.0;
        return Point{r * std::cos(a), r * std::sin(a)};
    };
    for (int i = 0; i < 6; ++i) {
        sites.push_back(polar(scenario.isd, 60.0 * i));
    }
    for (int i = 0; i < 12; ++i) {
        const double r = (i % 2 == 0) ? 2.0 * scenario.isd : std::sqrt(3.0) * scenario.isd;
        sites.push_back(polar(r, 30.0 * i));
    }
    sites.resize(static_cast<std::size_t>(scenario.n_b));
    return sites;
}

std::vector<double> interferer_distances(const HexScenario& scenario)
{
    const auto sites = hex_grid(scenario);
    const Point ue = ue_position(scenario);
    std::vector<double> out;
    out.reserve(sites.size() - 1);
    for (std::size_t i = 1; i < sites.size(); ++i) {
        out.push_back(distance(sites[i], ue));
    }
    return out;
}

void PathlossModel::validate() const
{
    if (!(alpha > 2.0) || !std::isfinite(alpha)) {
        throw std::domain_error("PathlossModel: alpha must exceed 2");
    }
    if (!(tx_power > 0.0) || !std::isfinite(tx_power)) {
        throw std::invalid_argument("PathlossModel: tx_power must be > 0");
    }
}

double received_power(const PathlossModel& model, double distance)
{
    model.validate();
    if (!(distance > 0.0)) {
        throw std::domain_error("received_power: distance must be > 0");
    }
    return model.tx_power * std::pow(distance, -model.alpha);
}

} // namespace ofdmim::geometry
