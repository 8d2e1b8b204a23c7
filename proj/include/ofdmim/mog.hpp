// SPDX-License-Identifier: Apache-2.0
//
// Zero-mean circularly symmetric Gaussian mixtures: exact construction of
// the noise-plus-ICI law, zero-mean EM fitting, and entropy bounds.
//
// Variances are total complex variances: a component with variance v has
// density exp(-|z|^2 / v) / (pi v); its real part is N(0, v / 2).

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ofdmim/types.hpp"

namespace ofdmim::mog {

struct MoGDist {
    std::vector<double> weights;
    std::vector<double> variances;

    std::size_t size() const { return weights.size(); }
    /// Sum of weights 1 within 1e-9, weights >= 0, variances > 0, equal lengths.
    void validate() const;
    /// sum_k w_k v_k
    double mean_power() const;
};

/// Thrown when EM or the entropy quadrature cannot produce a result.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double mog_pdf(const MoGDist& dist, std::complex<double> z);

/// Natural log of the density at any z with |z|^2 = abs2; no underflow.
double mog_log_pdf(const MoGDist& dist, double abs2);

/// Density and CDF of the real part.
double real_marginal_pdf(const MoGDist& dist, double x);
double real_marginal_cdf(const MoGDist& dist, double x);

/// L1 distance between the real-part marginal densities of two mixtures.
double real_marginal_l1(const MoGDist& a, const MoGDist& b);

/// n independent draws from the mixture.
ComplexSampleSet sample_mog(const MoGDist& dist, std::size_t n, std::uint64_t seed);

/// Enumeration produces up to 2^n components; longer power lists are refused.
inline constexpr std::size_t max_enumerated_interferers = 20;

/// Exact law of N + sum_l sqrt(T_l) H_l X_l zeta_l with P(zeta_l = 1) = 1/n_f
/// and H_l X_l ~ CN(0, 1): one component per active-interferer subset, with
/// variances equal within 1e-12 relative merged. Components come out sorted
/// by variance. Exact for constant-modulus (4-QAM) interferers; with 16/64-QAM
/// H_l X_l is itself a scale mixture and the result is an approximation.
MoGDist exact_mog_enumeration(std::span<const double> powers, int n_f, double noise_var);

struct EmSettings {
    int q_prime = 4;
    int max_iters = 500;
    /// Absolute log-likelihood change (nats) that ends iteration; 0 selects 1e-8 N_s.
    double loglik_tol = 0.0;
    int restarts = 5;
    std::uint64_t seed = 1;

    void validate() const;
};

/// One EM run from one initialisation.
struct EmRun {
    std::vector<double> loglik_trace;    ///< log-likelihood before each M step
    std::vector<double> power_residuals; ///< |sum w v - mean |tau|^2| / mean after each M step
    int iterations = 0;
    bool converged = false;
    bool failed = false;
    double final_loglik = 0.0;
};

struct EmResult {
    MoGDist dist;
    double log_likelihood = 0.0;
    int best_restart = 0;
    std::vector<EmRun> runs;
    std::vector<std::string> warnings;
};

/// Zero-mean EM. Restart 0 starts from variances log-spaced over
/// [0.5, 20] x mean power with uniform weights; later restarts draw the
/// variances log-uniformly over the same span and weights uniformly on the
/// simplex. The best final log-likelihood wins. Components whose variance
/// falls below 1e-12 x mean power (or whose responsibility mass vanishes)
/// are dropped with a warning.
EmResult em_fit(const ComplexSampleSet& samples, const EmSettings& settings);

/// Log-likelihood (nats) of the samples under the mixture.
double log_likelihood(const MoGDist& dist, const ComplexSampleSet& samples);

enum class EntropyConvention {
    /// 1/2 + sum w log2(2 pi e sigma), sigma = sqrt(v)
    printed,
    /// sum w log2(pi e v): the complex circularly symmetric Gaussian entropy
    complex,
};

/// Weighted component entropies: a lower bound on the mixture entropy.
double entropy_lower_bound_conditional(const MoGDist& dist,
                                       EntropyConvention convention = EntropyConvention::printed);

/// Sum of component entropies plus the weight entropy: an upper bound.
/// Zero-weight components must be removed first.
double entropy_upper_bound(const MoGDist& dist, EntropyConvention convention = EntropyConvention::printed);

/// Upper bound on H(Y) minus lower bound on H(Y | X, F).
double sum_rate_upper_bound(const MoGDist& noise_ici, const MoGDist& received,
                            EntropyConvention convention = EntropyConvention::printed);

/// Differential entropy in bits by adaptive quadrature over the radius
/// (log-radius substitution, split at every component scale).
double entropy_exact_radial(const MoGDist& dist);

struct MoGMetadata {
    std::string scenario;
    std::string convention = "complex_total_variance";
};

/// {"weights": [...], "variances": [...],
///  "metadata": {"scenario": "...", "convention": "complex_total_variance"}}
std::string to_json(const MoGDist& dist, const MoGMetadata& meta = {});
MoGDist from_json(const std::string& text, MoGMetadata* meta = nullptr);

} // namespace ofdmim::mog
