// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/mc.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ofdmim::mc {

namespace {

// CN(0, variance): independent real and imaginary parts of variance / 2.
std::complex<double> complex_normal(Rng& rng, std::normal_distribution<double>& unit, double variance)
{
    const double scale = std::sqrt(0.5 * variance);
    const double re = unit(rng);
    const double im = unit(rng);
    return {scale * re, scale * im};
}

} // namespace

Estimate simulate_index_error(double rho, int n_f, const TrialPlan& plan, SymbolModel symbol)
{
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw std::domain_error("simulate_index_error: rho must be positive");
    }
    if (n_f < 2) {
        throw std::domain_error("simulate_index_error: n_f must be >= 2");
    }
    plan.validate();
    const double noise_var = 1.0 / rho;
    std::vector<std::uint64_t> errors(plan.chunk_count(), 0);
    for_each_chunk(plan, Stream::index_error, [&](std::uint64_t chunk, std::uint64_t, std::uint64_t count, Rng& rng) {
        std::normal_distribution<double> unit(0.0, 1.0);
        // |N_k|^2 of a CN(0, 1/rho) noise sample is exponential with mean 1/rho
        std::exponential_distribution<double> noise_power(rho);
        std::uint64_t local = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            const std::complex<double> x = symbol == SymbolModel::real_gaussian
                                               ? std::complex<double>(unit(rng), 0.0)
                                               : complex_normal(rng, unit, 1.0);
            const std::complex<double> h = complex_normal(rng, unit, 1.0);
            const std::complex<double> y = h * x + complex_normal(rng, unit, noise_var);
            const double active = std::norm(y);
            double strongest_other = 0.0;
            for (int k = 1; k < n_f; ++k) {
                strongest_other = std::max(strongest_other, noise_power(rng));
            }
            if (active < strongest_other) {
                ++local;
            }
        }
        errors[chunk] = local;
    });
    std::uint64_t total = 0;
    for (auto e : errors) {
        total += e;
    }
    const double n = static_cast<double>(plan.trials);
    const double p = static_cast<double>(total) / n;
    return {p, std::sqrt(p * (1.0 - p) / n), plan.trials};
}

std::vector<double> simulate_sinr(const MultiCellConfig& cfg, const TrialPlan& plan, Thinning thinning,
                                  double window_radius)
{
    cfg.validate();
    plan.validate();
    const double radius = window_radius > 0.0 ? window_radius : geometry::default_window_radius(cfg.density);
    const double r2_max = radius * radius;
    const double area = std::numbers::pi * r2_max;
    const double field_density = thinning == Thinning::direct ? cfg.density / cfg.n_f : cfg.density;
    const double serving_gain = cfg.tx_power * std::pow(cfg.serving_distance, -cfg.alpha);
    const double half_alpha = 0.5 * cfg.alpha;

    std::vector<double> sinr(plan.trials);
    for_each_chunk(plan, Stream::sinr, [&](std::uint64_t, std::uint64_t first, std::uint64_t count, Rng& rng) {
        std::poisson_distribution<long> field_count(field_density * area);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::exponential_distribution<double> fading(1.0);
        std::uniform_int_distribution<int> subcarrier(0, cfg.n_f - 1);
        for (std::uint64_t t = 0; t < count; ++t) {
            const double signal = serving_gain * fading(rng);
            const long bs = field_count(rng);
            const int serving_subcarrier = thinning == Thinning::direct ? 0 : subcarrier(rng);
            double interference = 0.0;
            for (long i = 0; i < bs; ++i) {
                if (thinning == Thinning::per_bs_subcarrier && subcarrier(rng) != serving_subcarrier) {
                    continue;
                }
                // squared distance of a point uniform on the disc
                const double r2 = r2_max * unit(rng);
                interference += fading(rng) * std::pow(r2, -half_alpha);
            }
            sinr[first + t] = signal / (cfg.noise_var + cfg.tx_power * interference);
        }
    });
    return sinr;
}

std::vector<std::complex<double>> qam_constellation(int order)
{
    int side = 0;
    switch (order) {
    case 4:
        side = 2;
        break;
    case 16:
        side = 4;
        break;
    case 64:
        side = 8;
        break;
    default:
        throw std::invalid_argument("qam_constellation: order must be 4, 16 or 64");
    }
    // levels +-1, +-3, ...; average energy 2 (M - 1) / 3
    const double scale = 1.0 / std::sqrt(2.0 * (order - 1) / 3.0);
    std::vector<std::complex<double>> points;
    points.reserve(static_cast<std::size_t>(order));
    for (int i = 0; i < side; ++i) {
        for (int q = 0; q < side; ++q) {
            points.emplace_back(scale * (2 * i - side + 1), scale * (2 * q - side + 1));
        }
    }
    return points;
}

void IciScenario::validate() const
{
    hex.validate();
    model.validate();
    if (n_f < 1) {
        throw std::invalid_argument("IciScenario: n_f must be >= 1");
    }
    if (qam_order != 4 && qam_order != 16 && qam_order != 64) {
        throw std::invalid_argument("IciScenario: qam_order must be 4, 16 or 64");
    }
    if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
        throw std::invalid_argument("IciScenario: noise_var must be > 0");
    }
}

std::vector<double> IciScenario::interferer_powers() const
{
    std::vector<double> powers;
    for (double d : geometry::interferer_distances(hex)) {
        powers.push_back(geometry::received_power(model, d));
    }
    return powers;
}

double IciScenario::serving_power() const { return geometry::received_power(model, hex.serving_distance); }

std::string IciScenario::describe() const
{
    std::ostringstream os;
    os << "hex n_b=" << hex.n_b << " isd=" << hex.isd << " d=" << hex.serving_distance << " alpha=" << model.alpha
       << " tx_power=" << model.tx_power << " n_f=" << n_f << " qam=" << qam_order << " noise_var=" << noise_var;
    return os.str();
}

namespace {

LinkSamples draw_link(const IciScenario& scenario, const TrialPlan& plan, bool with_received)
{
    scenario.validate();
    plan.validate();
    const auto powers = scenario.interferer_powers();
    std::vector<double> amplitudes;
    for (double t : powers) {
        amplitudes.push_back(std::sqrt(t));
    }
    const double serving_amplitude = std::sqrt(scenario.serving_power());
    const auto constellation = qam_constellation(scenario.qam_order);

    LinkSamples out;
    out.noise_ici.samples.resize(plan.trials);
    out.noise_ici.meta = scenario.describe();
    if (with_received) {
        out.received.samples.resize(plan.trials);
        out.received.meta = scenario.describe();
    }
    for_each_chunk(plan, Stream::ici, [&](std::uint64_t, std::uint64_t first, std::uint64_t count, Rng& rng) {
        std::normal_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<int> subcarrier(0, scenario.n_f - 1);
        std::uniform_int_distribution<std::size_t> symbol(0, constellation.size() - 1);
        for (std::uint64_t t = 0; t < count; ++t) {
            const int serving_subcarrier = subcarrier(rng);
            std::complex<double> psi = complex_normal(rng, unit, scenario.noise_var);
            for (double a : amplitudes) {
                if (subcarrier(rng) != serving_subcarrier) {
                    continue;
                }
                const std::complex<double> h = complex_normal(rng, unit, 1.0);
                psi += a * h * constellation[symbol(rng)];
            }
            out.noise_ici.samples[first + t] = psi;
            if (with_received) {
                const std::complex<double> h = complex_normal(rng, unit, 1.0);
                out.received.samples[first + t] = serving_amplitude * h * constellation[symbol(rng)] + psi;
            }
        }
    });
    return out;
}

double entropy_std_error(const mog::MoGDist& dist, const ComplexSampleSet& set)
{
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& z : set.samples) {
        const double v = -mog::mog_log_pdf(dist, std::norm(z)) / std::numbers::ln2;
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(set.samples.size());
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    return std::sqrt(var / n);
}

} // namespace

ComplexSampleSet sample_noise_plus_ici(const IciScenario& scenario, const TrialPlan& plan)
{
    return draw_link(scenario, plan, false).noise_ici;
}

LinkSamples sample_link(const IciScenario& scenario, const TrialPlan& plan) { return draw_link(scenario, plan, true); }

MutualInfoEstimate empirical_mutual_info(const LinkSamples& samples, const mog::EmSettings& em)
{
    if (samples.noise_ici.samples.size() < min_mi_samples || samples.received.samples.size() < min_mi_samples) {
        throw std::invalid_argument("empirical_mutual_info: need at least 10^4 samples per set");
    }
    MutualInfoEstimate out;
    out.fit_noise_ici = mog::em_fit(samples.noise_ici, em);
    out.fit_received = mog::em_fit(samples.received, em);
    out.h_noise_ici = mog::entropy_exact_radial(out.fit_noise_ici.dist);
    out.h_received = mog::entropy_exact_radial(out.fit_received.dist);
    out.bits = out.h_received - out.h_noise_ici;
    const double se_y = entropy_std_error(out.fit_received.dist, samples.received);
    const double se_psi = entropy_std_error(out.fit_noise_ici.dist, samples.noise_ici);
    out.std_error = std::sqrt(se_y * se_y + se_psi * se_psi);
    return out;
}

MutualInfoEstimate empirical_mutual_info(const IciScenario& scenario, const TrialPlan& plan,
                                         const mog::EmSettings& em)
{
    if (plan.trials < min_mi_samples) {
        throw std::invalid_argument("empirical_mutual_info: need at least 10^4 samples per set");
    }
    return empirical_mutual_info(sample_link(scenario, plan), em);
}

} // namespace ofdmim::mc
