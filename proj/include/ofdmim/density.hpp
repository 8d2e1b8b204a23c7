// SPDX-License-Identifier: Apache-2.0
//
// Real-part histograms and L1 comparisons against mixture densities.

#pragma once

#include <functional>
#include <vector>

#include "ofdmim/types.hpp"

namespace ofdmim {

struct RealHistogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> mass; ///< fraction of samples per bin
    double below = 0.0;       ///< fraction under lo
    double above = 0.0;       ///< fraction at or over hi
    std::size_t count = 0;

    std::size_t bins() const { return mass.size(); }
    double bin_width() const { return (hi - lo) / static_cast<double>(mass.size()); }
    double edge(std::size_t i) const { return lo + bin_width() * static_cast<double>(i); }
    double center(std::size_t i) const { return lo + bin_width() * (static_cast<double>(i) + 0.5); }
    /// mass / bin width
    double density(std::size_t i) const { return mass[i] / bin_width(); }
};

/// Histogram of Re(z) over [lo, hi) with equal-width bins.
RealHistogram real_part_histogram(const ComplexSampleSet& samples, double lo, double hi, int bins);

/// L1 distance between the histogram and a distribution, both reduced to
/// bin masses (including the two tail bins): sum |mass_i - (F(b_{i+1}) - F(b_i))|.
double binned_l1(const RealHistogram& hist, const std::function<double(double)>& cdf);

} // namespace ofdmim
