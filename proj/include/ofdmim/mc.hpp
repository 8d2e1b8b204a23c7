// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo oracles for the analytic results: index detection, SINR under a
// Poisson interferer field, noise plus ICI on a hexagonal layout, and a
// plug-in mutual information estimate.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ofdmim/geometry.hpp"
#include "ofdmim/mog.hpp"
#include "ofdmim/parallel.hpp"
#include "ofdmim/types.hpp"

namespace ofdmim::mc {

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

/// Distribution of the data symbol riding on the active subcarrier.
enum class SymbolModel {
    /// x ~ N(0, 1) real, so x^2 is chi-square with one degree of freedom;
    /// the model the closed-form index error probability assumes.
    real_gaussian,
    /// x ~ CN(0, 1)
    complex_gaussian,
};

/// Fraction of trials where the active subcarrier (channel H ~ CN(0,1),
/// noise variance 1/rho) is not the strongest of n_f. Binomial standard error.
Estimate simulate_index_error(double rho, int n_f, const TrialPlan& plan,
                              SymbolModel symbol = SymbolModel::real_gaussian);

enum class Thinning {
    /// interferers drawn directly as a PPP of density lambda / n_f
    direct,
    /// full PPP of density lambda; every BS picks a uniform subcarrier and
    /// interferes only on a match with the serving one
    per_bs_subcarrier,
};

/// Raw SINR draws, one per trial, in trial order. window_radius = 0 selects
/// geometry::default_window_radius(density).
std::vector<double> simulate_sinr(const MultiCellConfig& cfg, const TrialPlan& plan,
                                  Thinning thinning = Thinning::direct, double window_radius = 0.0);

/// Square M-QAM with unit average energy, M in {4, 16, 64}.
std::vector<std::complex<double>> qam_constellation(int order);

/// Hexagonal-layout link with QAM interferers that collide on the serving
/// subcarrier with probability 1/n_f.
struct IciScenario {
    geometry::HexScenario hex;
    geometry::PathlossModel model;
    int n_f = 4;
    int qam_order = 4;
    double noise_var = 7.5e-11;

    void validate() const;
    /// T_l for every non-serving BS, layout order
    std::vector<double> interferer_powers() const;
    /// T_xi = P_T d^{-alpha}
    double serving_power() const;
    std::string describe() const;
};

/// psi = N + sum_l sqrt(T_l) H_l X_l zeta_l, one draw per trial.
ComplexSampleSet sample_noise_plus_ici(const IciScenario& scenario, const TrialPlan& plan);

struct LinkSamples {
    ComplexSampleSet noise_ici; ///< psi
    ComplexSampleSet received;  ///< Y = sqrt(T_xi) H_xi X_xi + psi, same trials
};

/// Paired noise-plus-ICI and received-signal draws.
LinkSamples sample_link(const IciScenario& scenario, const TrialPlan& plan);

struct MutualInfoEstimate {
    double bits = 0.0;
    double std_error = 0.0;
    double h_received = 0.0; ///< H(Y), bits
    double h_noise_ici = 0.0; ///< H(Y | X, F) = H(psi), bits
    mog::EmResult fit_received;
    mog::EmResult fit_noise_ici;
};

/// Minimum sample count accepted by empirical_mutual_info.
inline constexpr std::uint64_t min_mi_samples = 10000;

/// H(Y) - H(psi), each the exact entropy of an EM fit to the sampled set.
/// The standard error is the Monte Carlo error of the resubstitution
/// entropy estimates -mean(log2 p_fit).
MutualInfoEstimate empirical_mutual_info(const LinkSamples& samples, const mog::EmSettings& em);
MutualInfoEstimate empirical_mutual_info(const IciScenario& scenario, const TrialPlan& plan,
                                         const mog::EmSettings& em);

} // namespace ofdmim::mc
