// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/multicell.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ofdmim/units.hpp"

namespace ofdmim::multicell {

double analytic_sinr_cdf(const MultiCellConfig& cfg, double rho_t)
{
    cfg.validate();
    if (!(rho_t >= 0.0)) {
        throw std::domain_error("analytic_sinr_cdf: SINR threshold must be >= 0");
    }
    const double a = cfg.alpha;
    const double noise_exponent = std::pow(cfg.serving_distance, a) * rho_t * cfg.noise_var / cfg.tx_power;
    const double shape = 2.0 * std::numbers::pi * std::numbers::pi / (a * std::sin(2.0 * std::numbers::pi / a));
    const double field_exponent = cfg.density / cfg.n_f * cfg.serving_distance * cfg.serving_distance
                                  * std::pow(rho_t, 2.0 / a) * shape;
    // 1 - e^{-x} without cancellation for small x
    return -std::expm1(-(noise_exponent + field_exponent));
}

CurveTable sinr_cdf_curve(const MultiCellConfig& cfg, std::span<const double> grid_db)
{
    CurveTable table;
    table.label = "sinr_cdf_nf" + std::to_string(cfg.n_f);
    table.provenance = Provenance::analytic;
    table.x.assign(grid_db.begin(), grid_db.end());
    std::vector<double> cdf;
    cdf.reserve(grid_db.size());
    for (double db : grid_db) {
        cdf.push_back(analytic_sinr_cdf(cfg, db_to_linear(db)));
    }
    table.add_column("cdf", std::move(cdf));
    return table;
}

double link_snr(const mc::IciScenario& scenario) { return scenario.serving_power() / scenario.noise_var; }

void SumRateSweep::validate() const
{
    scenario.validate();
    plan.validate();
    em.validate();
    if (snr_db.empty()) {
        throw std::invalid_argument("SumRateSweep: empty SNR sweep");
    }
    if (plan.trials < mc::min_mi_samples) {
        throw std::invalid_argument("SumRateSweep: need at least 10^4 trials per point");
    }
}

std::vector<SumRatePipelineResult> run_sum_rate_pipeline(const SumRateSweep& sweep)
{
    sweep.validate();
    std::vector<SumRatePipelineResult> results;
    results.reserve(sweep.snr_db.size());
    for (std::size_t i = 0; i < sweep.snr_db.size(); ++i) {
        mc::IciScenario point = sweep.scenario;
        point.noise_var = sweep.scenario.serving_power() / db_to_linear(sweep.snr_db[i]);
        TrialPlan plan = sweep.plan;
        plan.master_seed = derive_seed(sweep.plan.master_seed, 0x5eedULL, i);
        mog::EmSettings em = sweep.em;
        em.seed = derive_seed(sweep.em.seed, 0xe11ULL, i);

        const auto mi = mc::empirical_mutual_info(point, plan, em);
        SumRatePipelineResult r;
        r.snr_db = sweep.snr_db[i];
        r.noise_var = point.noise_var;
        r.fitted_noise_ici = mi.fit_noise_ici.dist;
        r.fitted_received = mi.fit_received.dist;
        r.r3_upper = mog::sum_rate_upper_bound(r.fitted_noise_ici, r.fitted_received, mog::EntropyConvention::complex);
        r.r3_upper_printed =
            mog::sum_rate_upper_bound(r.fitted_noise_ici, r.fitted_received, mog::EntropyConvention::printed);
        r.mi_estimate = mi.bits;
        r.mi_std_error = mi.std_error;
        r.scenario = point.describe();
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace ofdmim::multicell
