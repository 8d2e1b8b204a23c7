// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/density.hpp"

#include <cmath>
#include <stdexcept>

namespace ofdmim {

RealHistogram real_part_histogram(const ComplexSampleSet& samples, double lo, double hi, int bins)
{
    samples.validate();
    if (!(hi > lo) || bins < 1) {
        throw std::invalid_argument("real_part_histogram: need lo < hi and bins >= 1");
    }
    RealHistogram h;
    h.lo = lo;
    h.hi = hi;
    h.mass.assign(static_cast<std::size_t>(bins), 0.0);
    h.count = samples.samples.size();
    const double scale = bins / (hi - lo);
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    std::size_t below = 0;
    std::size_t above = 0;
    for (const auto& z : samples.samples) {
        const double x = z.real();
        if (x < lo) {
            ++below;
        } else if (x >= hi) {
            ++above;
        } else {
            const auto i = std::min(static_cast<std::size_t>((x - lo) * scale), counts.size() - 1);
            ++counts[i];
        }
    }
    const double n = static_cast<double>(h.count);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        h.mass[i] = static_cast<double>(counts[i]) / n;
    }
    h.below = static_cast<double>(below) / n;
    h.above = static_cast<double>(above) / n;
    return h;
}

double binned_l1(const RealHistogram& hist, const std::function<double(double)>& cdf)
{
    const double f_lo = cdf(hist.lo);
    double l1 = std::abs(hist.below - f_lo);
    double prev = f_lo;
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        const double next = cdf(hist.edge(i + 1));
        l1 += std::abs(hist.mass[i] - (next - prev));
        prev = next;
    }
    l1 += std::abs(hist.above - (1.0 - prev));
    return l1;
}

} // namespace ofdmim
