//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/quadrature.hpp
//! Globally adaptive Gauss-Kronrod (10/21) quadrature with breakpoints.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "error.hpp"

namespace revuz
{

struct QuadResult
{
    double value{0};
    double error{0};
    int panels{0};
};

struct QuadOptions
{
    double abs_tol{1e-10};
    double rel_tol{0};
    int max_panels{4000};
};

namespace detail
{
struct Panel
{
    double a;
    double b;
    double value;
    double error;

    bool operator<(Panel const& other) const noexcept
    {
        return error < other.error;
    }
};

// One 21-point Kronrod panel; the error estimate is |Kronrod - Gauss|.
template<class F>
Panel gk21(F const& f, double a, double b)
{
    // map to [-1, 1] so the rule's error estimate needs no rescaling
    double const c = 0.5 * (a + b);
    double const h = 0.5 * (b - a);
    auto const g = [&](double u) { return f(c + h * u); };
    double error = 0;
    double const value =
        boost::math::quadrature::gauss_kronrod<double, 21>::integrate(g, -1.0, 1.0, 0, 0.0, &error);
    return {a, b, value * h, error * h};
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Integrate f over [a, b], splitting first at every breakpoint inside the
 * interval, then bisecting the panel with the largest error estimate until
 * the summed estimate is below max(abs_tol, rel_tol * |value|).
 *
 * Throws NumericError when the panel budget runs out.
 */
template<class F>
QuadResult integrate_adaptive(F const& f, double a, double b,
                              QuadOptions const& opt = {},
                              std::span<double const> breakpoints = {})
{
    if (!(b > a))
    {
        return {};
    }
    std::vector<double> cuts{a};
    for (double p : breakpoints)
    {
        if (p > a && p < b)
        {
            cuts.push_back(p);
        }
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Panel> heap;
    double value = 0;
    double error = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    {
        auto p = detail::gk21(f, cuts[i], cuts[i + 1]);
        value += p.value;
        error += p.error;
        heap.push(p);
    }
    int panels = static_cast<int>(heap.size());
    auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::fabs(value)); };
    while (error > target())
    {
        if (panels >= opt.max_panels)
        {
            throw NumericError("quadrature did not converge", value, error);
        }
        auto worst = heap.top();
        heap.pop();
        double const mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
        {
            throw NumericError("quadrature panel underflow", value, error);
        }
        auto left = detail::gk21(f, worst.a, mid);
        auto right = detail::gk21(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // Re-sum to shed the drift of incremental updates.
    double total = 0;
    double total_err = 0;
    while (!heap.empty())
    {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    return {total, total_err, panels};
}

}  // namespace revuz
