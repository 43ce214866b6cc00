//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/pcaf.hpp
//! Positive continuous additive functionals evaluated along paths.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "measures.hpp"
#include "simulate.hpp"

namespace revuz
{

//! A_t = int_0^t f(X_s) ds
struct DensityPcaf
{
    RealFn f;
    double sup_bound{inf};
    std::string label;
};

//! A_t = (2 eps)^{-1} int_0^t 1_{(x - eps, x + eps)}(X_s) ds
struct LocalTime
{
    double x{0};
    double eps{0};
};

//! A_t = (3/2)^n int_0^t 1_{C_n}(X_s) ds
struct CantorPcaf
{
    int n{1};
};

//---------------------------------------------------------------------------//
/*!
 * Tagged PCAF description with its Revuz measure.
 */
class PcafSpec
{
  public:
    using Variant = std::variant<DensityPcaf, LocalTime, CantorPcaf>;

    PcafSpec(DensityPcaf d) : v_(std::move(d)) {}
    PcafSpec(LocalTime l) : v_(l)
    {
        if (!(l.eps > 0))
        {
            throw DomainError("local time bandwidth must be positive");
        }
    }
    PcafSpec(CantorPcaf c) : v_(c) {}

    //! Build the density PCAF of a density measure.
    static PcafSpec from_density(SmoothMeasure const& mu)
    {
        auto const* d = mu.as<Density>();
        if (!d)
        {
            throw UnsupportedError("from_density needs a density measure");
        }
        auto f = d->f;
        auto const s = d->support;
        return PcafSpec{DensityPcaf{[f, s](double x) {
                                        return (x > s.lo && x < s.hi) ? f(x) : 0.0;
                                    },
                                    d->sup_bound, d->label}};
    }

    Variant const& get() const noexcept { return v_; }

    //! Increment rate f at state x (0 at the cemetery).
    double rate(double x) const
    {
        if (is_cemetery(x))
        {
            return 0.0;
        }
        return std::visit(
            [x](auto const& s) -> double {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, DensityPcaf>)
                {
                    return s.f(x);
                }
                else if constexpr (std::is_same_v<T, LocalTime>)
                {
                    return (x > s.x - s.eps && x < s.x + s.eps) ? 0.5 / s.eps : 0.0;
                }
                else
                {
                    return cantor_membership(x, s.n) ? std::pow(1.5, s.n) : 0.0;
                }
            },
            v_);
    }

    double sup_rate() const
    {
        return std::visit(
            [](auto const& s) -> double {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, DensityPcaf>)
                {
                    return s.sup_bound;
                }
                else if constexpr (std::is_same_v<T, LocalTime>)
                {
                    return 0.5 / s.eps;
                }
                else
                {
                    return std::pow(1.5, s.n);
                }
            },
            v_);
    }

    //! Revuz measure (the box density for local times).
    SmoothMeasure revuz_measure() const
    {
        return std::visit(
            [](auto const& s) -> SmoothMeasure {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, DensityPcaf>)
                {
                    return SmoothMeasure{Density{s.f, {-inf, inf}, s.label, {}, s.sup_bound}};
                }
                else if constexpr (std::is_same_v<T, LocalTime>)
                {
                    double const h = 0.5 / s.eps;
                    return SmoothMeasure{Density{[h](double) { return h; },
                                                 {s.x - s.eps, s.x + s.eps}, "local_time",
                                                 {}, h}};
                }
                else
                {
                    return cantor_level(s.n);
                }
            },
            v_);
    }

  private:
    Variant v_;
};

struct PcafTrajectory
{
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> discounted;
    double alpha{0};
    double tail_bound{0};
};

namespace detail
{
//! exp(-alpha a) - exp(-alpha b), over alpha (b - a when alpha = 0).
inline double discount_mass(double alpha, double a, double b) noexcept
{
    if (alpha == 0)
    {
        return b - a;
    }
    return (std::exp(-alpha * a) - std::exp(-alpha * b)) / alpha;
}

/*!
 * Walk the path and report (i, A_{t_i}, A~_{t_i}) to `visit`.
 *
 * Event grids integrate exactly; uniform grids use the trapezoid rule, and
 * the step in which the path dies uses the left state up to zeta.
 */
template<class Visit>
void accumulate(PcafSpec const& spec, Path const& path, double alpha, Visit&& visit)
{
    double a = 0;
    double ad = 0;
    std::size_t const n = path.times.size();
    visit(std::size_t{0}, a, ad);
    if (path.piecewise_constant)
    {
        for (std::size_t i = 0; i + 1 < n; ++i)
        {
            double const r = spec.rate(path.states[i]);
            if (r != 0)
            {
                a += r * (path.times[i + 1] - path.times[i]);
                ad += r * discount_mass(alpha, path.times[i], path.times[i + 1]);
            }
            visit(i + 1, a, ad);
        }
        return;
    }
    double r0 = spec.rate(path.states[0]);
    double w0 = alpha == 0 ? 1.0 : std::exp(-alpha * path.times[0]);
    double const decay = alpha == 0 || n < 2
                             ? 1.0
                             : std::exp(-alpha * (path.times[1] - path.times[0]));
    for (std::size_t i = 0; i + 1 < n; ++i)
    {
        double const t0 = path.times[i];
        double const t1 = path.times[i + 1];
        if (is_cemetery(path.states[i]))
        {
            visit(i + 1, a, ad);
            continue;
        }
        if (is_cemetery(path.states[i + 1]))
        {
            double const end = std::min(path.zeta, t1);
            a += r0 * (end - t0);
            ad += r0 * discount_mass(alpha, t0, end);
            r0 = 0;
            visit(i + 1, a, ad);
            continue;
        }
        double const r1 = spec.rate(path.states[i + 1]);
        double const h = t1 - t0;
        // uniform grid: the discount factor advances by a constant ratio
        double const w1 = w0 * decay;
        a += 0.5 * h * (r0 + r1);
        ad += 0.5 * h * (w0 * r0 + w1 * r1);
        r0 = r1;
        w0 = w1;
        visit(i + 1, a, ad);
    }
}

inline double tail_rate(PcafSpec const& spec, Path const& path)
{
    if (path.killed() && path.zeta <= path.horizon())
    {
        return 0.0;
    }
    switch (path.model)
    {
        case ModelKind::KilledStatic:
            return spec.rate(path.start());
        case ModelKind::FlipJump:
            return std::max(spec.rate(path.start()), spec.rate(-path.start()));
        default:
            return spec.sup_rate();
    }
}
}  // namespace detail

/*!
 * Cumulative A and discounted A~ = int e^{-alpha s} dA_s on the path grid.
 */
inline PcafTrajectory evaluate(PcafSpec const& spec, Path const& path, double alpha)
{
    PcafTrajectory out;
    out.alpha = alpha;
    out.times = path.times;
    out.values.resize(path.times.size());
    out.discounted.resize(path.times.size());
    detail::accumulate(spec, path, alpha, [&](std::size_t i, double a, double ad) {
        out.values[i] = a;
        out.discounted[i] = ad;
    });
    double const rate = detail::tail_rate(spec, path);
    double const horizon = path.horizon();
    if (rate == 0)
    {
        out.tail_bound = 0;
    }
    else
    {
        out.tail_bound = alpha > 0 ? std::exp(-alpha * horizon) * rate / alpha : inf;
    }
    return out;
}

struct DiscountedTotal
{
    double value{0};
    double tail_bound{0};
    //! Tail bound above the requested tolerance.
    bool flagged{false};
};

inline DiscountedTotal discounted_total(PcafTrajectory const& a, double tol = inf)
{
    if (!(a.alpha > 0))
    {
        throw DomainError("discounted_total needs alpha > 0");
    }
    DiscountedTotal out{a.discounted.empty() ? 0.0 : a.discounted.back(), a.tail_bound, false};
    out.flagged = out.tail_bound > tol;
    return out;
}

//! A~ at the horizon and its tail bound, without materializing the grid.
inline DiscountedTotal discounted_total(PcafSpec const& spec, Path const& path, double alpha)
{
    double last = 0;
    detail::accumulate(spec, path, alpha, [&](std::size_t, double, double ad) { last = ad; });
    double const rate = detail::tail_rate(spec, path);
    double const tail = rate == 0 ? 0.0 : std::exp(-alpha * path.horizon()) * rate / alpha;
    return {last, tail, false};
}

//! A at time horizon, without materializing the grid.
inline double terminal_value(PcafSpec const& spec, Path const& path)
{
    double last = 0;
    detail::accumulate(spec, path, 0.0, [&](std::size_t, double a, double) { last = a; });
    return last;
}

/*!
 * max over grid times t <= T of |a(t) - b(t)|. Trajectories on different
 * grids are compared on the union grid with linear interpolation.
 */
inline double sup_distance(PcafTrajectory const& a, PcafTrajectory const& b, double horizon)
{
    if (a.times == b.times)
    {
        double best = 0;
        for (std::size_t i = 0; i < a.times.size() && a.times[i] <= horizon; ++i)
        {
            best = std::max(best, std::fabs(a.values[i] - b.values[i]));
        }
        return best;
    }
    auto interp = [](PcafTrajectory const& p, double t) {
        auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
        if (it == p.times.begin())
        {
            return p.values.front();
        }
        if (it == p.times.end())
        {
            return p.values.back();
        }
        auto const j = static_cast<std::size_t>(it - p.times.begin());
        double const w = (t - p.times[j - 1]) / (p.times[j] - p.times[j - 1]);
        return p.values[j - 1] + w * (p.values[j] - p.values[j - 1]);
    };
    std::vector<double> grid = a.times;
    grid.insert(grid.end(), b.times.begin(), b.times.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double best = 0;
    for (double t : grid)
    {
        if (t > horizon)
        {
            break;
        }
        best = std::max(best, std::fabs(interp(a, t) - interp(b, t)));
    }
    return best;
}

//! sup_{t_i <= T} |A_{t_i} - B_{t_i}| on one shared path.
inline double sup_distance(PcafSpec const& a, PcafSpec const& b, Path const& path,
                           double horizon)
{
    std::vector<double> va(path.times.size());
    detail::accumulate(a, path, 0.0, [&](std::size_t i, double v, double) { va[i] = v; });
    double best = 0;
    detail::accumulate(b, path, 0.0, [&](std::size_t i, double v, double) {
        if (path.times[i] <= horizon)
        {
            best = std::max(best, std::fabs(va[i] - v));
        }
    });
    return best;
}

}  // namespace revuz
