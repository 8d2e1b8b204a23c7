// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

namespace ofdmim::detail {

// e^{x^2} erfc(x) for x >= 0, generic over the floating type. Below the
// switch point the product is formed directly; above it the asymptotic
// series is used, whose smallest term is about e^{-x^2}.
template <class Real>
Real erfcx_nonneg(const Real& x)
{
    using std::abs;
    using std::erfc;
    using std::exp;
    using std::sqrt;
    if (x < 0) {
        throw std::domain_error("erfcx_nonneg: negative argument");
    }
    // e^{-x^2} below the working precision at the switch point
    const double digits = std::max(16, std::numeric_limits<Real>::digits10);
    const double switch_point = std::sqrt(digits * 2.302585092994046) + 1.5;
    if (x < Real(switch_point)) {
        return exp(x * x) * erfc(x);
    }
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real inv_two_x2 = Real(1) / (2 * x * x);
    Real term = 1;
    Real sum = 1;
    for (int n = 1; n < 10000; ++n) {
        const Real next = -term * Real(2 * n - 1) * inv_two_x2;
        if (abs(next) >= abs(term)) {
            break;
        }
        term = next;
        sum += term;
        if (abs(term) < eps * abs(sum)) {
            break;
        }
    }
    return sum / (x * sqrt(boost::math::constants::pi<Real>()));
}

} // namespace ofdmim::detail
