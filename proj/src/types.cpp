// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/types.hpp"

#include <cmath>
#include <stdexcept>

namespace ofdmim {

void MultiCellConfig::validate() const
{
    if (!(density > 0.0) || !std::isfinite(density)) {
        throw std::invalid_argument("MultiCellConfig: density must be > 0");
    }
    if (n_f < 1) {
        throw std::invalid_argument("MultiCellConfig: n_f must be >= 1");
    }
    if (!(alpha > 2.0) || !std::isfinite(alpha)) {
        throw std::domain_error("MultiCellConfig: alpha must exceed 2");
    }
    if (!(tx_power > 0.0) || !(serving_distance > 0.0) || !(noise_var > 0.0)) {
        throw std::invalid_argument("MultiCellConfig: tx_power, serving_distance, noise_var must be > 0");
    }
}

void ComplexSampleSet::validate() const
{
    if (samples.empty()) {
        throw std::invalid_argument("ComplexSampleSet: empty");
    }
    for (const auto& z : samples) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("ComplexSampleSet: non-finite sample");
        }
    }
}

double ComplexSampleSet::mean_power() const
{
    double sum = 0.0;
    for (const auto& z : samples) {
        sum += std::norm(z);
    }
    return samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
}

} // namespace ofdmim
