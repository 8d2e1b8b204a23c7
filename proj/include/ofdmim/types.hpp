// SPDX-License-Identifier: Apache-2.0
//
// Domain types shared between the sampling, mixture and multi-cell modules.

#pragma once

#include <complex>
#include <string>
#include <vector>

namespace ofdmim {

/// Poisson-field multi-cell setup. SINR is evaluated at a UE whose serving
/// BS sits at a fixed distance; interferers are the BSs sharing its subcarrier.
struct MultiCellConfig {
    double density = 1e-4;          ///< lambda, BS per m^2
    int n_f = 1;
    double alpha = 3.0;
    double tx_power = 40.0;         ///< watts
    double serving_distance = 50.0; ///< meters
    double noise_var = 7.5e-11;     ///< watts per subcarrier

    void validate() const;
};

/// Draws of a zero-mean complex quantity (noise plus ICI, or the received signal).
struct ComplexSampleSet {
    std::vector<std::complex<double>> samples;
    std::string meta;

    void validate() const;
    double mean_power() const;
};

} // namespace ofdmim
