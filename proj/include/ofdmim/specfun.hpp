// SPDX-License-Identifier: Apache-2.0
//
// Special functions needed by the closed-form rate and error expressions.

#pragma once

#include <cstdint>

namespace ofdmim::specfun {

/// Absolute/relative tolerance pair used by numerical comparisons.
struct Tolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;

    Tolerance() = default;
    Tolerance(double abs, double rel);

    bool accepts(double value, double reference) const;
};

/// Exponential integral Ei(x) = -int_{-x}^{inf} e^{-t}/t dt for x < 0.
/// Throws std::domain_error for x >= 0.
double exp_integral_ei(double x);

/// e^x * E1(x) for x > 0, where E1(x) = -Ei(-x). Stays finite where e^x
/// alone would overflow.
double exp_scaled_e1(double x);

double erf(double x);

/// Complementary error function; use instead of 1 - erf(x) for large x.
double erfc(double x);

/// Scaled complementary error function e^{x^2} erfc(x).
double erfcx(double x);

/// Binomial coefficient in exact integer arithmetic. Requires k <= n <= 64.
std::uint64_t binom(unsigned n, unsigned k);

/// Binary entropy in bits with 0 log 0 = 0. Inputs within 1e-15 outside
/// [0, 1] are clamped; anything further out throws std::domain_error.
double binary_entropy(double p);

} // namespace ofdmim::specfun
