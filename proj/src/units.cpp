// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/units.hpp"

#include <cmath>
#include <stdexcept>

namespace ofdmim {

std::vector<double> linear_range(double start, double step, double stop)
{
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
        throw std::invalid_argument("linear_range: need finite start <= stop and step > 0");
    }
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 0.5));
    for (long i = 0; i <= count; ++i) {
        out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
}

} // namespace ofdmim
