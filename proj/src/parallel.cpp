// SPDX-License-Identifier: Apache-2.0

#include "ofdmim/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ofdmim {

void TrialPlan::validate() const
{
    if (trials < 1) {
        throw std::invalid_argument("TrialPlan: trials must be >= 1");
    }
    if (chunk_size < 1) {
        throw std::invalid_argument("TrialPlan: chunk_size must be >= 1");
    }
    if (workers < 1) {
        throw std::invalid_argument("TrialPlan: workers must be >= 1");
    }
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t chunk)
{
    return mix64(mix64(mix64(master_seed) ^ stream) + chunk);
}

void for_each_chunk(const TrialPlan& plan, Stream stream,
                    const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t, Rng&)>& body)
{
    plan.validate();
    // chunk_size above trials just means one chunk
    const std::uint64_t chunk_size = std::min(plan.chunk_size, plan.trials);
    const std::uint64_t chunks = (plan.trials + chunk_size - 1) / chunk_size;

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t first = c * chunk_size;
        const std::uint64_t count = std::min(chunk_size, plan.trials - first);
        Rng rng(derive_seed(plan.master_seed, static_cast<std::uint64_t>(stream), c));
        body(c, first, count, rng);
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(plan.workers, chunks));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) {
            run_chunk(c);
        }
        return;
    }

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::uint64_t c = next++; c < chunks; c = next++) {
                try {
                    run_chunk(c);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next = chunks;
                }
            }
        });
    }
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace ofdmim
