//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/reduce.hpp
//! Worker fan-out and fixed-shape reductions.
//!
//! Results never depend on the worker count: every item writes its own slot
//! and sums are taken over a tree whose shape depends only on the length.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace revuz
{

//! Default worker count (at least one).
inline unsigned default_workers() noexcept
{
    return std::max(1u, std::thread::hardware_concurrency());
}

//---------------------------------------------------------------------------//
/*!
 * Run body(i) for i in [0, n) over contiguous blocks on `workers` threads.
 *
 * The first exception thrown by any worker is rethrown on the caller.
 */
template<class F>
void parallel_for(std::size_t n, unsigned workers, F&& body)
{
    workers = std::max(1u, workers);
    if (workers == 1 || n < 2)
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            body(i);
        }
        return;
    }
    std::size_t const chunk = (n + workers - 1) / workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
    {
        std::size_t const begin = w * chunk;
        std::size_t const end = std::min(n, begin + chunk);
        if (begin >= end)
        {
            break;
        }
        pool.emplace_back([&, begin, end] {
            try
            {
                for (std::size_t i = begin; i < end; ++i)
                {
                    body(i);
                }
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool)
    {
        t.join();
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
}

//! Pairwise sum with a shape fixed by the input length.
inline double pairwise_sum(std::span<double const> values) noexcept
{
    constexpr std::size_t leaf = 8;
    if (values.size() <= leaf)
    {
        double s = 0;
        for (double v : values)
        {
            s += v;
        }
        return s;
    }
    std::size_t const half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

//! Mean and standard error of the mean (sample sd / sqrt(n)).
struct MeanError
{
    double mean{0};
    double std_error{0};
};

inline MeanError mean_and_error(std::span<double const> values)
{
    std::size_t const n = values.size();
    if (n == 0)
    {
        return {};
    }
    double const mean = pairwise_sum(values) / static_cast<double>(n);
    if (n == 1)
    {
        return {mean, 0.0};
    }
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const d = values[i] - mean;
        dev[i] = d * d;
    }
    double const var = pairwise_sum(dev) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace revuz
