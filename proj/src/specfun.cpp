// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ofdmim/detail/erfcx.hpp"

namespace ofdmim::specfun {

Tolerance::Tolerance(double abs, double rel) : abs_tol(abs), rel_tol(rel)
{
    if (!(abs > 0.0) || !(rel > 0.0)) {
        throw std::invalid_argument("Tolerance: abs_tol and rel_tol must be > 0");
    }
}

bool Tolerance::accepts(double value, double reference) const
{
    const double err = std::abs(value - reference);
    return err <= abs_tol || err <= rel_tol * std::abs(reference);
}

namespace {

// Power series Ei(x) = gamma + ln|x| + sum x^k / (k k!), used for |x| < 5.
double ei_series(double x)
{
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        term *= x / k;
        const double add = term / k;
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return std::numbers::egamma + std::log(std::abs(x)) + sum;
}

// e^x E1(x) by the modified Lentz evaluation of
// E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))).
double scaled_e1_fraction(double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            return h;
        }
    }
    throw std::runtime_error("exp_scaled_e1: continued fraction did not converge");
}

} // namespace

double exp_integral_ei(double x)
{
    if (!(x < 0.0)) {
        throw std::domain_error("exp_integral_ei: argument must be negative");
    }
    if (x > -5.0) {
        return ei_series(x);
    }
    // Ei(x) = -E1(-x); underflows to -0 for very negative x.
    return -scaled_e1_fraction(-x) * std::exp(x);
}

double exp_scaled_e1(double x)
{
    if (!(x > 0.0)) {
        throw std::domain_error("exp_scaled_e1: argument must be positive");
    }
    if (x < 5.0) {
        return -ei_series(-x) * std::exp(x);
    }
    return scaled_e1_fraction(x);
}

double erf(double x) { return std::erf(x); }

double erfc(double x) { return std::erfc(x); }

double erfcx(double x)
{
    if (x < 0.0) {
        // erfc(-x) = 2 - erfc(x)
        return 2.0 * std::exp(x * x) - detail::erfcx_nonneg(-x);
    }
    return detail::erfcx_nonneg(x);
}

std::uint64_t binom(unsigned n, unsigned k)
{
    if (k > n) {
        throw std::domain_error("binom: k must not exceed n");
    }
    if (n > 64) {
        throw std::domain_error("binom: n > 64 overflows 64-bit result");
    }
    k = std::min(k, n - k);
    __extension__ using Wide = unsigned __int128;
    Wide result = 1;
    for (unsigned i = 0; i < k; ++i) {
        // exact at every step: result holds C(n, i)
        result = result * (n - i) / (i + 1);
    }
    return static_cast<std::uint64_t>(result);
}

double binary_entropy(double p)
{
    constexpr double slack = 1e-15;
    if (!(p >= -slack && p <= 1.0 + slack)) {
        throw std::domain_error("binary_entropy: probability outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    auto plogp = [](double q) { return q > 0.0 ? q * std::log2(q) : 0.0; };
    return -plogp(p) - plogp(1.0 - p);
}

} // namespace ofdmim::specfun
