//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/stats.hpp
//! Trend statistics for fixed-seed ladders.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace revuz
{

//! Kendall tau-a between two equally long sequences.
inline double kendall_tau(std::span<double const> x, std::span<double const> y)
{
    if (x.size() != y.size())
    {
        throw std::invalid_argument("kendall_tau: length mismatch");
    }
    std::size_t const n = x.size();
    if (n < 2)
    {
        return 0.0;
    }
    long concordant = 0;
    long discordant = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = i + 1; j < n; ++j)
        {
            double const s = (x[j] - x[i]) * (y[j] - y[i]);
            if (s > 0)
            {
                ++concordant;
            }
            else if (s < 0)
            {
                ++discordant;
            }
        }
    }
    double const pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return static_cast<double>(concordant - discordant) / pairs;
}

/*!
 * P(tau <= observed) under exchangeability, for n untied points.
 *
 * Uses the exact distribution of the number of inversions of a random
 * permutation (Mahonian numbers), so it is valid for short ladders.
 */
inline double kendall_lower_p_value(double tau, std::size_t n)
{
    if (n < 2)
    {
        return 1.0;
    }
    std::size_t const max_inv = n * (n - 1) / 2;
    // counts[k] = permutations of the current length with k inversions
    std::vector<double> counts{1.0};
    for (std::size_t m = 2; m <= n; ++m)
    {
        std::vector<double> next(counts.size() + m - 1, 0.0);
        for (std::size_t k = 0; k < counts.size(); ++k)
        {
            for (std::size_t j = 0; j < m; ++j)
            {
                next[k + j] += counts[k];
            }
        }
        counts = std::move(next);
    }
    // tau = 1 - 4 I / (n (n - 1)); low tau <=> many inversions.
    double const inversions
        = (1.0 - tau) * static_cast<double>(n) * static_cast<double>(n - 1) / 4.0;
    double total = 0;
    double tail = 0;
    for (std::size_t k = 0; k <= max_inv; ++k)
    {
        total += counts[k];
        if (static_cast<double>(k) >= inversions - 1e-9)
        {
            tail += counts[k];
        }
    }
    return tail / total;
}

//! Significant decreasing trend of `values` along `ladder` (one-sided).
inline bool trend_decreasing(std::span<double const> ladder, std::span<double const> values,
                             double level = 0.05)
{
    double const tau = kendall_tau(ladder, values);
    return tau < 0 && kendall_lower_p_value(tau, values.size()) <= level;
}

inline bool strictly_decreasing(std::span<double const> values)
{
    for (std::size_t i = 1; i < values.size(); ++i)
    {
        if (!(values[i] < values[i - 1]))
        {
            return false;
        }
    }
    return true;
}

}  // namespace revuz
