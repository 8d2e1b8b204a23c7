// SPDX-License-Identifier: Apache-2.0
//
// Base-station layouts and the distance-based received power model.
// Shadow fading is fixed at 1 (off).

#pragma once

#include <cmath>
#include <vector>

#include "ofdmim/parallel.hpp"

namespace ofdmim::geometry {

struct Point {
    double x = 0.0;
    double y = 0.0;

    double norm() const { return std::hypot(x, y); }
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Window radius R = 80 / sqrt(pi lambda); the disc then holds 6400 points
/// on average and the truncated far field moves the SINR CDF by < 0.003 at
/// alpha = 3.
double default_window_radius(double density);

struct PppConfig {
    double density = 1e-4;       ///< BS per m^2
    double window_radius = 0.0;  ///< meters, disc centred on the origin

    static PppConfig with_default_window(double density);
    void validate() const;
};

/// Homogeneous PPP on the disc: Poisson count, points uniform on the disc.
std::vector<Point> sample_ppp(const PppConfig& cfg, Rng& rng);

/// Hexagonal layout: serving BS at the origin, then ring 1 (6 sites at ISD)
/// and ring 2 (6 corners at 2 ISD, 6 edge sites at sqrt(3) ISD), each ring
/// counter-clockwise from 0 degrees. n_b in [1, 19] keeps the first n_b
/// sites. The UE sits at (serving_distance, 0).
struct HexScenario {
    int n_b = 19;
    double isd = 100.0;
    double serving_distance = 50.0;

    void validate() const;
};

std::vector<Point> hex_grid(const HexScenario& scenario);

inline Point ue_position(const HexScenario& scenario) { return {scenario.serving_distance, 0.0}; }

/// Distances from the UE to every non-serving BS, in layout order.
std::vector<double> interferer_distances(const HexScenario& scenario);

struct PathlossModel {
    double alpha = 3.0;     ///< must exceed 2
    double tx_power = 40.0; ///< watts

    void validate() const;
};

/// P_T d^{-alpha}
double received_power(const PathlossModel& model, double distance);

} // namespace ofdmim::geometry
