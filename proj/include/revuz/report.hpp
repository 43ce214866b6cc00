//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/report.hpp
//! Experiment reports and the verdict rules applied to their tables.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "estimators.hpp"
#include "stats.hpp"

#ifndef REVUZ_BUILD_ID
#    define REVUZ_BUILD_ID "unknown"
#endif

namespace revuz
{

inline std::string build_id()
{
    return REVUZ_BUILD_ID;
}

enum class CellKind
{
    MonteCarlo,
    Quadrature,
    ClosedForm
};

inline char const* to_string(CellKind k)
{
    switch (k)
    {
        case CellKind::MonteCarlo:
            return "monte_carlo";
        case CellKind::Quadrature:
            return "quadrature";
        case CellKind::ClosedForm:
            return "closed_form";
    }
    return "?";
}

//! A number with its uncertainty: standard error (MC) or tolerance.
struct Cell
{
    std::string column;
    double value{0};
    double error{0};
    CellKind kind{CellKind::Quadrature};
    std::size_t samples{0};
};

inline Cell mc_cell(std::string column, McEstimate const& e)
{
    return {std::move(column), e.mean, e.std_error, CellKind::MonteCarlo, e.n};
}

struct Row
{
    double n{0};
    std::vector<Cell> cells;

    std::optional<Cell> get(std::string const& column) const
    {
        for (auto const& c : cells)
        {
            if (c.column == column)
            {
                return c;
            }
        }
        return std::nullopt;
    }
};

enum class Status
{
    Pass,
    Fail,
    ExpectedGap,
    Inconclusive
};

inline char const* to_string(Status s)
{
    switch (s)
    {
        case Status::Pass:
            return "pass";
        case Status::Fail:
            return "fail";
        case Status::ExpectedGap:
            return "expected-gap";
        case Status::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

struct Verdict
{
    std::string name;
    Status status{Status::Inconclusive};
    std::string detail;

    bool ok() const noexcept { return status == Status::Pass || status == Status::ExpectedGap; }
};

struct ExperimentReport
{
    std::string id;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<Row> rows;
    std::vector<Verdict> verdicts;
    std::vector<std::string> notes;
    std::uint64_t seed{0};
    std::string build{build_id()};

    //! Add a cell to the row for n, creating rows in increasing n.
    void put(double n, Cell c)
    {
        auto it = std::lower_bound(rows.begin(), rows.end(), n,
                                   [](Row const& r, double v) { return r.n < v; });
        if (it == rows.end() || it->n != n)
        {
            it = rows.insert(it, Row{n, {}});
        }
        it->cells.push_back(std::move(c));
    }

    std::optional<Cell> at(double n, std::string const& column) const
    {
        for (auto const& r : rows)
        {
            if (r.n == n)
            {
                return r.get(column);
            }
        }
        return std::nullopt;
    }

    //! (n, cell) pairs of one column in row order.
    std::vector<std::pair<double, Cell>> column(std::string const& name) const
    {
        std::vector<std::pair<double, Cell>> out;
        for (auto const& r : rows)
        {
            if (auto c = r.get(name))
            {
                out.emplace_back(r.n, *c);
            }
        }
        return out;
    }

    bool passed() const
    {
        return !verdicts.empty()
               && std::all_of(verdicts.begin(), verdicts.end(),
                              [](Verdict const& v) { return v.ok(); });
    }
};

//---------------------------------------------------------------------------//
// Verdict rules. Each reads only the numbers it is given.
//---------------------------------------------------------------------------//

namespace detail
{
inline std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::pair<std::vector<double>, std::vector<double>>
split(std::vector<std::pair<double, Cell>> const& col)
{
    std::vector<double> ns;
    std::vector<double> vs;
    for (auto const& [n, c] : col)
    {
        ns.push_back(n);
        vs.push_back(c.value);
    }
    return {ns, vs};
}
}  // namespace detail

//! |value - target| <= sigmas * error + allowance
inline Verdict verdict_within(std::string name, Cell const& c, double target,
                              double sigmas = 3.0, double allowance = 0.0)
{
    double const dev = std::fabs(c.value - target);
    double const bound = sigmas * c.error + allowance;
    return {std::move(name), dev <= bound ? Status::Pass : Status::Fail,
            "|" + detail::fmt(c.value) + " - " + detail::fmt(target) + "| = " + detail::fmt(dev)
                + " vs bound " + detail::fmt(bound)};
}

//! One-sided Kendall test for a decreasing column.
inline Verdict verdict_decreasing(std::string name,
                                  std::vector<std::pair<double, Cell>> const& col,
                                  double level = 0.05)
{
    auto [ns, vs] = detail::split(col);
    if (vs.size() < 2)
    {
        return {std::move(name), Status::Inconclusive, "fewer than two rows"};
    }
    double const tau = kendall_tau(ns, vs);
    double const p = kendall_lower_p_value(tau, vs.size());
    bool const ok = tau < 0 && p <= level;
    return {std::move(name), ok ? Status::Pass : Status::Fail,
            "kendall tau " + detail::fmt(tau) + ", p " + detail::fmt(p)};
}

//! Strictly decreasing and the last value below `threshold`.
inline Verdict verdict_decreasing_below(std::string name,
                                        std::vector<std::pair<double, Cell>> const& col,
                                        double threshold)
{
    auto [ns, vs] = detail::split(col);
    if (vs.empty())
    {
        return {std::move(name), Status::Inconclusive, "empty column"};
    }
    bool const ok = strictly_decreasing(vs) && vs.back() < threshold;
    return {std::move(name), ok ? Status::Pass : Status::Fail,
            "last " + detail::fmt(vs.back()) + " vs " + detail::fmt(threshold)
                + (strictly_decreasing(vs) ? ", strictly decreasing" : ", not monotone")};
}

//! Kendall-decreasing trend and the last value below `threshold`.
inline Verdict verdict_trend_below(std::string name,
                                   std::vector<std::pair<double, Cell>> const& col,
                                   double threshold, double level = 0.05)
{
    if (col.empty())
    {
        return {std::move(name), Status::Inconclusive, "empty column"};
    }
    auto trend = verdict_decreasing(name, col, level);
    double const last = col.back().second.value;
    bool const ok = trend.status == Status::Pass && last < threshold;
    Status const s = trend.status == Status::Inconclusive ? Status::Inconclusive
                     : ok                                 ? Status::Pass
                                                          : Status::Fail;
    return {std::move(name), s,
            "last " + detail::fmt(last) + " vs " + detail::fmt(threshold) + ", " + trend.detail};
}

/*!
 * Values at n >= n_max / 4 stay >= frac times the value at n_max, and that
 * value exceeds its own uncertainty (3 errors) plus `floor`.
 */
inline Verdict verdict_plateau(std::string name, std::vector<std::pair<double, Cell>> const& col,
                               Status on_hold = Status::ExpectedGap, double frac = 0.5,
                               double floor = 0.0)
{
    if (col.empty())
    {
        return {std::move(name), Status::Inconclusive, "empty column"};
    }
    auto const& [n_max, last] = col.back();
    bool ok = last.value - 3.0 * last.error > floor;
    double lowest = last.value;
    for (auto const& [n, c] : col)
    {
        if (n >= n_max / 4)
        {
            ok = ok && c.value >= frac * last.value;
            lowest = std::min(lowest, c.value);
        }
    }
    return {std::move(name), ok ? on_hold : Status::Fail,
            "tail minimum " + detail::fmt(lowest) + ", value at n=" + detail::fmt(n_max) + " "
                + detail::fmt(last.value)};
}

//! lo <= value <= hi for every row with n >= n_min.
inline Verdict verdict_range(std::string name, std::vector<std::pair<double, Cell>> const& col,
                             double n_min, double lo, double hi,
                             Status on_hold = Status::Pass)
{
    bool ok = false;
    std::string seen;
    for (auto const& [n, c] : col)
    {
        if (n >= n_min)
        {
            ok = seen.empty() ? true : ok;
            ok = ok && c.value >= lo && c.value <= hi;
            seen += (seen.empty() ? "" : ", ") + detail::fmt(c.value);
        }
    }
    if (seen.empty())
    {
        return {std::move(name), Status::Inconclusive, "no rows at n >= " + detail::fmt(n_min)};
    }
    return {std::move(name), ok ? on_hold : Status::Fail,
            "values [" + seen + "] vs [" + detail::fmt(lo) + ", " + detail::fmt(hi) + "]"};
}

//! Every cell of `a` is at most the matching cell of `b` plus slack.
inline Verdict verdict_dominated(std::string name, std::vector<std::pair<double, Cell>> const& a,
                                 std::vector<std::pair<double, Cell>> const& b)
{
    if (a.size() != b.size() || a.empty())
    {
        return {std::move(name), Status::Inconclusive, "column size mismatch"};
    }
    double worst = -inf;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        double const slack = a[i].second.error + b[i].second.error;
        worst = std::max(worst, a[i].second.value - b[i].second.value - slack);
    }
    return {std::move(name), worst <= 0 ? Status::Pass : Status::Fail,
            "max excess " + detail::fmt(worst)};
}

//! Verdict holding when every listed verdict holds. A part that failed
//! outright wins over an inconclusive one.
inline Verdict verdict_all(std::string name, std::vector<Verdict> const& parts,
                           Status on_hold = Status::Pass)
{
    bool failed = parts.empty();
    bool unsure = false;
    std::string detail;
    for (auto const& v : parts)
    {
        failed = failed || v.status == Status::Fail;
        unsure = unsure || v.status == Status::Inconclusive;
        detail += (detail.empty() ? "" : "; ") + v.name + ": " + to_string(v.status);
    }
    Status const s = failed ? Status::Fail : (unsure ? Status::Inconclusive : on_hold);
    return {std::move(name), s, detail};
}

}  // namespace revuz
