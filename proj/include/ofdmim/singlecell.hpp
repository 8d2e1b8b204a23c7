// SPDX-License-Identifier: Apache-2.0
//
// Single-cell OFDM index modulation with Gaussian input. The rate splits
// into a symbol part r1 (ergodic Rayleigh rate) and an index part r2 (the
// N_F-ary symmetric channel driven by the index detection error).

#pragma once

#include <vector>

namespace ofdmim::singlecell {

/// Largest subcarrier count the index-error evaluation supports.
inline constexpr int max_subcarriers = 1024;

struct SingleCellConfig {
    int n_f = 4;
    std::vector<double> snr_db;

    void validate() const;
};

struct RatePoint {
    double snr = 0.0; ///< linear
    double r1 = 0.0;
    double p_err = 0.0;
    double r2 = 0.0;
    double r_total = 0.0;
};

/// Ergodic rate of a Rayleigh channel with Gaussian input, bits/use.
double rate_symbol(double rho);

/// Probability that the strongest of n_f subcarriers is not the active one.
double index_error_prob(double rho, int n_f);

/// Index rate of the N_F-ary symmetric channel with the given error probability.
double rate_index_from_prob(double p_err, int n_f);

double rate_index(double rho, int n_f);

std::vector<RatePoint> rate_total(const SingleCellConfig& cfg);

enum class NfSearch { PowersOfTwo, AllIntegers };

/// Subcarrier count in [2, nf_max] maximising rate_index; ties go to the
/// smaller count.
int optimal_nf(double rho, int nf_max, NfSearch mode = NfSearch::PowersOfTwo);

/// Index error probability for every n_f in [2, nf_max] at one SNR. Shares
/// the per-term work across counts; entry i holds n_f = i + 2.
std::vector<double> index_error_prob_all(double rho, int nf_max);

} // namespace ofdmim::singlecell
