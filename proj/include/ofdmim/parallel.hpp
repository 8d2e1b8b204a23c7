// SPDX-License-Identifier: Apache-2.0
//
// Deterministic chunked Monte Carlo execution. Each chunk draws from its own
// engine seeded by (master_seed, stream, chunk index), so results do not
// depend on the number of workers or on scheduling order.

#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace ofdmim {

using Rng = std::mt19937_64;

struct TrialPlan {
    std::uint64_t trials = 100000;
    std::uint64_t master_seed = 1;
    std::uint64_t chunk_size = 10000;
    unsigned workers = 1; ///< execution only; never changes results

    void validate() const;
    std::uint64_t chunk_count() const { return (trials + chunk_size - 1) / chunk_size; }
};

/// splitmix64 finaliser
std::uint64_t mix64(std::uint64_t x);

/// Seed for one chunk of one named random stream.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t chunk);

/// Stream tags keep different estimators sharing a master seed independent.
enum class Stream : std::uint64_t {
    index_error = 1,
    sinr = 2,
    ici = 3,
    ppp = 4,
    em_restart = 5,
};

/// Runs body(chunk, first_trial, trial_count, rng) for every chunk of the plan,
/// spread over plan.workers threads. body must only write to chunk-owned state.
void for_each_chunk(const TrialPlan& plan, Stream stream,
                    const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t, Rng&)>& body);

} // namespace ofdmim
