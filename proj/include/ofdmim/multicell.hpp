// SPDX-License-Identifier: Apache-2.0
//
// Multi-cell analytics: the SINR CDF under a Poisson interferer field thinned
// by the subcarrier count, and the sample -> fit -> bound sum-rate pipeline.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "ofdmim/curve.hpp"
#include "ofdmim/mc.hpp"
#include "ofdmim/mog.hpp"
#include "ofdmim/types.hpp"

namespace ofdmim::multicell {

/// G(t) = 1 - exp(-d^a t s2 / P_T) exp(-(lambda / n_f) d^2 t^{2/a} 2 pi^2 / (a sin(2 pi / a)))
double analytic_sinr_cdf(const MultiCellConfig& cfg, double rho_t);

/// Analytic CDF on a dB grid; column "cdf".
CurveTable sinr_cdf_curve(const MultiCellConfig& cfg, std::span<const double> grid_db);

/// SNR of the serving link, P_T d^{-alpha} / noise_var.
double link_snr(const mc::IciScenario& scenario);

struct SumRatePipelineResult {
    double snr_db = 0.0;
    double noise_var = 0.0;
    mog::MoGDist fitted_noise_ici;
    mog::MoGDist fitted_received;
    double r3_upper = 0.0;         ///< complex-entropy convention, a valid upper bound
    double r3_upper_printed = 0.0; ///< printed 1/2 + sum w log2(2 pi e sigma) convention
    double mi_estimate = 0.0;
    double mi_std_error = 0.0;
    std::string scenario;
};

struct SumRateSweep {
    mc::IciScenario scenario; ///< noise_var is overridden per sweep point
    std::vector<double> snr_db;
    TrialPlan plan;
    mog::EmSettings em;

    void validate() const;
};

/// For every SNR point (set by scaling the noise variance at fixed geometry),
/// draws psi and Y, fits both, and evaluates the bound and the MI estimate.
/// Sweep points use consecutive derived seeds and are returned in sweep order.
std::vector<SumRatePipelineResult> run_sum_rate_pipeline(const SumRateSweep& sweep);

} // namespace ofdmim::multicell
