// SPDX-License-Identifier: Apache-2.0
//
// dB <-> linear conversions. Public interfaces take dB, the math runs linear.

#pragma once

#include <cmath>
#include <vector>

namespace ofdmim {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline std::vector<double> db_to_linear(const std::vector<double>& db)
{
    std::vector<double> out;
    out.reserve(db.size());
    for (double v : db) {
        out.push_back(db_to_linear(v));
    }
    return out;
}

/// Inclusive grid start, start+step, ..., stop (stop kept if within half a step).
std::vector<double> linear_range(double start, double step, double stop);

} // namespace ofdmim
