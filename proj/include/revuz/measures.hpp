//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/measures.hpp
//! Smooth measures of finite energy integrals: densities, atoms, Cantor
//! measures and nonnegative combinations, with integration and sampling.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "models.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace revuz
{

using RealFn = std::function<double(double)>;

class SmoothMeasure;

//! f(x) dx restricted to `support`. `singular_points` are handed to the
//! quadrature as panel breakpoints.
struct Density
{
    RealFn f;
    Interval support;
    std::string label;
    std::vector<double> singular_points;
    //! sup of f on its support (inf when unbounded); used for tail bounds.
    double sup_bound{inf};
};

struct Dirac
{
    double x{0};
};

//! Normalized Lebesgue measure on the n-th Cantor approximant C_n.
struct CantorLevel
{
    int n{1};
};

//! The Cantor measure itself.
struct CantorLimit
{
};

struct WeightedTerm
{
    double coefficient{0};
    std::shared_ptr<SmoothMeasure const> measure;
};

//! Nonnegative combination; the empty sum is the zero measure.
struct WeightedSum
{
    std::vector<WeightedTerm> terms;
};

//---------------------------------------------------------------------------//
/*!
 * Immutable tagged measure value.
 */
class SmoothMeasure
{
  public:
    using Variant = std::variant<Density, Dirac, CantorLevel, CantorLimit, WeightedSum>;

    SmoothMeasure() : v_(WeightedSum{}) {}
    SmoothMeasure(Density d) : v_(std::move(d))
    {
        auto const& dens = std::get<Density>(v_);
        if (!dens.f || !(dens.support.lo <= dens.support.hi))
        {
            throw DomainError("density support must be an interval");
        }
    }
    SmoothMeasure(Dirac d) : v_(d) {}
    SmoothMeasure(CantorLevel c) : v_(c)
    {
        if (c.n < 0)
        {
            throw DomainError("Cantor level must be nonnegative");
        }
    }
    SmoothMeasure(CantorLimit c) : v_(c) {}
    SmoothMeasure(WeightedSum s) : v_(std::move(s))
    {
        for (auto const& t : std::get<WeightedSum>(v_).terms)
        {
            if (!(t.coefficient >= 0) || !t.measure)
            {
                throw DomainError("weighted sum needs nonnegative coefficients");
            }
        }
    }

    Variant const& get() const noexcept { return v_; }

    template<class T>
    T const* as() const noexcept
    {
        return std::get_if<T>(&v_);
    }

    bool is_zero() const noexcept
    {
        auto const* s = as<WeightedSum>();
        if (!s)
        {
            return false;
        }
        return std::all_of(s->terms.begin(), s->terms.end(), [](auto const& t) {
            return t.coefficient == 0 || t.measure->is_zero();
        });
    }

  private:
    Variant v_;
};

//---------------------------------------------------------------------------//
// Constructors for the measure families used by the experiments
//---------------------------------------------------------------------------//

inline SmoothMeasure zero_measure()
{
    return SmoothMeasure{WeightedSum{}};
}

inline SmoothMeasure dirac(double x)
{
    return SmoothMeasure{Dirac{x}};
}

inline SmoothMeasure cantor_level(int n)
{
    return SmoothMeasure{CantorLevel{n}};
}

inline SmoothMeasure cantor_limit()
{
    return SmoothMeasure{CantorLimit{}};
}

inline SmoothMeasure indicator(Interval support)
{
    return SmoothMeasure{Density{[](double) { return 1.0; }, support,
                                 "indicator", {}, 1.0}};
}

//! 1 + sin(n x)
inline SmoothMeasure sin_shift(int n, Interval support)
{
    double const k = n;
    return SmoothMeasure{Density{[k](double x) { return 1.0 + std::sin(k * x); },
                                 support, "sin_shift(" + std::to_string(n) + ")", {}, 2.0}};
}

//! 1 + n^{-1/2} sin(n x); converges to 1 in L^2 of a bounded support.
inline SmoothMeasure damped_sin_shift(int n, Interval support)
{
    double const k = n;
    double const a = 1.0 / std::sqrt(k);
    return SmoothMeasure{Density{[k, a](double x) { return 1.0 + a * std::sin(k * x); },
                                 support, "damped_sin_shift(" + std::to_string(n) + ")",
                                 {}, 1.0 + a}};
}

//! 1 + x^-2 on (0, 1).
inline SmoothMeasure killed_base()
{
    return SmoothMeasure{Density{[](double x) { return 1.0 + 1.0 / (x * x); },
                                 {0.0, 1.0}, "killed_base", {0.0}, inf}};
}

//! (1 + x^-2)(1 + n^{-1/2} sin(n x)) on (0, 1).
inline SmoothMeasure perturbed(int n)
{
    double const k = n;
    double const a = 1.0 / std::sqrt(k);
    return SmoothMeasure{
        Density{[k, a](double x) { return (1.0 + 1.0 / (x * x)) * (1.0 + a * std::sin(k * x)); },
                {0.0, 1.0}, "perturbed(" + std::to_string(n) + ")", {0.0}, inf}};
}

//! n^{3/2} on (0, 1/n).
inline SmoothMeasure spike(int n)
{
    double const k = n;
    double const height = k * std::sqrt(k);
    return SmoothMeasure{Density{[height, k](double x) {
                                     return (x > 0 && x < 1.0 / k) ? height : 0.0;
                                 },
                                 {0.0, 1.0 / k}, "spike(" + std::to_string(n) + ")", {},
                                 height}};
}

inline SmoothMeasure weighted_sum(std::vector<std::pair<double, SmoothMeasure>> terms)
{
    WeightedSum s;
    for (auto& [c, m] : terms)
    {
        s.terms.push_back({c, std::make_shared<SmoothMeasure const>(std::move(m))});
    }
    return SmoothMeasure{std::move(s)};
}

//---------------------------------------------------------------------------//
// Cantor sets
//---------------------------------------------------------------------------//

/*!
 * Membership in C_n. A point with two ternary expansions is a member when
 * either survives, so endpoints of kept intervals belong to every C_n. The
 * slack absorbs rounding of x itself (about 1e-15 in original units).
 */
inline bool cantor_membership(double x, int n)
{
    if (!(x >= 0.0 && x <= 1.0))
    {
        return false;
    }
    long double y = x;
    long double slack = 1e-15L;
    for (int k = 0; k < n; ++k)
    {
        if (y <= 1.0L / 3.0L + slack)
        {
            y = std::min(1.0L, 3.0L * y);
        }
        else if (y >= 2.0L / 3.0L - slack)
        {
            y = std::max(0.0L, 3.0L * y - 2.0L);
        }
        else
        {
            return false;
        }
        slack = std::min(1e-3L, 3.0L * slack);
    }
    return true;
}

//! The 2^n closed intervals of C_n, left to right.
inline std::vector<Interval> cantor_intervals(int n)
{
    std::vector<Interval> out{{0.0, 1.0}};
    for (int k = 0; k < n; ++k)
    {
        std::vector<Interval> next;
        next.reserve(out.size() * 2);
        for (auto iv : out)
        {
            double const third = iv.length() / 3.0;
            next.push_back({iv.lo, iv.lo + third});
            next.push_back({iv.hi - third, iv.hi});
        }
        out = std::move(next);
    }
    return out;
}

//! Lebesgue measure of C_n.
inline double cantor_set_length(int n)
{
    return std::pow(2.0 / 3.0, n);
}

//---------------------------------------------------------------------------//
// Integration
//---------------------------------------------------------------------------//

struct IntegrateOptions
{
    //! Extra panel breakpoints (kernel kinks).
    std::vector<double> breakpoints;
    //! Lipschitz bound on h for the Cantor-limit recursion; estimated when
    //! absent.
    std::optional<double> lipschitz;
    //! Exact interval decomposition of C_n is used up to this level.
    int max_exact_cantor_level{16};
    int max_cantor_depth{24};
};

namespace detail
{
inline std::optional<Interval> intersect(Interval a, Interval b)
{
    Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (r.lo > r.hi)
    {
        return std::nullopt;
    }
    return r;
}

inline double estimate_lipschitz(RealFn const& h, Interval window)
{
    constexpr int samples = 2048;
    double const step = window.length() / samples;
    if (!(step > 0))
    {
        return 0.0;
    }
    double slope = 0;
    double prev = h(window.lo);
    for (int i = 1; i <= samples; ++i)
    {
        double const cur = h(window.lo + i * step);
        slope = std::max(slope, std::fabs(cur - prev) / step);
        prev = cur;
    }
    return 2.0 * slope + 1e-300;
}

struct CantorRecursion
{
    RealFn const& h;
    Interval window;
    int exact_level;  // < 0: limit measure
    int leaf_depth;
    QuadOptions quad;
    std::vector<double> const& breakpoints;

    // Integral of h against the normalized measure restricted to `piece`,
    // times the piece mass.
    double run(Interval piece, double mass, int depth) const
    {
        if (piece.hi < window.lo || piece.lo > window.hi)
        {
            return 0.0;
        }
        if (exact_level >= 0 && depth == exact_level)
        {
            auto iv = intersect(piece, window);
            if (!iv || iv->length() <= 0)
            {
                return 0.0;
            }
            double const dens = mass / piece.length();
            auto r = integrate_adaptive(h, iv->lo, iv->hi, quad, breakpoints);
            return dens * r.value;
        }
        if (depth == leaf_depth)
        {
            double const c = 0.5 * (piece.lo + piece.hi);
            return window.contains(c) ? mass * h(c) : 0.0;
        }
        double const third = piece.length() / 3.0;
        return run({piece.lo, piece.lo + third}, 0.5 * mass, depth + 1)
               + run({piece.hi - third, piece.hi}, 0.5 * mass, depth + 1);
    }
};
}  // namespace detail

/*!
 * Integral of h over `window` against mu, with absolute error target tol.
 *
 * Densities use adaptive Gauss-Kronrod panels, C_n uses its 2^n intervals,
 * and the Cantor limit uses the self-similar split
 *   int h dmu = 1/2 int h(x/3) dmu + 1/2 int h(2/3 + x/3) dmu
 * down to the depth where the Lipschitz bound makes each leaf's midpoint
 * error below tol.
 */
inline double integrate(SmoothMeasure const& mu, RealFn const& h, Interval window,
                        double tol, IntegrateOptions const& opt = {})
{
    return std::visit(
        [&](auto const& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Density>)
            {
                auto iv = detail::intersect(m.support, window);
                if (!iv || iv->length() <= 0)
                {
                    return 0.0;
                }
                if (!iv->finite())
                {
                    throw UnsupportedError("integration window must be bounded for "
                                           + m.label);
                }
                std::vector<double> cuts = opt.breakpoints;
                cuts.insert(cuts.end(), m.singular_points.begin(), m.singular_points.end());
                auto const& f = m.f;
                auto integrand = [&](double x) { return f(x) * h(x); };
                QuadOptions q;
                q.abs_tol = tol;
                return integrate_adaptive(integrand, iv->lo, iv->hi, q, cuts).value;
            }
            else if constexpr (std::is_same_v<T, Dirac>)
            {
                return window.contains(m.x) ? h(m.x) : 0.0;
            }
            else if constexpr (std::is_same_v<T, CantorLevel> || std::is_same_v<T, CantorLimit>)
            {
                int level = -1;
                if constexpr (std::is_same_v<T, CantorLevel>)
                {
                    level = m.n;
                }
                int leaf = opt.max_cantor_depth;
                QuadOptions q;
                if (level >= 0 && level <= opt.max_exact_cantor_level)
                {
                    q.abs_tol = tol / std::ldexp(1.0, level);
                }
                else
                {
                    auto iv = detail::intersect({0.0, 1.0}, window);
                    if (!iv)
                    {
                        return 0.0;
                    }
                    double const lip = opt.lipschitz ? *opt.lipschitz
                                                     : detail::estimate_lipschitz(h, *iv);
                    double const need = std::ceil(std::log(std::max(lip / (2 * tol), 1.0))
                                                  / std::log(3.0));
                    if (need > opt.max_cantor_depth)
                    {
                        throw NumericError("Cantor recursion depth exceeds budget", 0.0,
                                           lip * std::pow(3.0, -opt.max_cantor_depth) / 2);
                    }
                    leaf = std::max(1, static_cast<int>(need));
                    if (level >= 0 && level <= leaf)
                    {
                        leaf = opt.max_cantor_depth + 1;  // exact leaves reached first
                        q.abs_tol = tol / std::ldexp(1.0, level);
                    }
                    else
                    {
                        level = -1;
                    }
                }
                detail::CantorRecursion rec{h, window, level, leaf, q, opt.breakpoints};
                return rec.run({0.0, 1.0}, 1.0, 0);
            }
            else
            {
                double s = 0;
                for (auto const& t : m.terms)
                {
                    if (t.coefficient != 0)
                    {
                        s += t.coefficient * integrate(*t.measure, h, window, tol, opt);
                    }
                }
                return s;
            }
        },
        mu.get());
}

//! Smallest interval carrying mu (nullopt for the zero measure).
inline std::optional<Interval> support_hull(SmoothMeasure const& mu)
{
    return std::visit(
        [&](auto const& m) -> std::optional<Interval> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Density>)
            {
                return m.support;
            }
            else if constexpr (std::is_same_v<T, Dirac>)
            {
                return Interval{m.x, m.x};
            }
            else if constexpr (std::is_same_v<T, WeightedSum>)
            {
                std::optional<Interval> hull;
                for (auto const& t : m.terms)
                {
                    if (t.coefficient == 0)
                    {
                        continue;
                    }
                    auto h = support_hull(*t.measure);
                    if (h)
                    {
                        hull = hull ? Interval{std::min(hull->lo, h->lo), std::max(hull->hi, h->hi)}
                                    : *h;
                    }
                }
                return hull;
            }
            else
            {
                return Interval{0.0, 1.0};
            }
        },
        mu.get());
}

//! Total mass (inf for unbounded densities with infinite support).
inline double total_mass(SmoothMeasure const& mu, double tol = 1e-10)
{
    auto hull = support_hull(mu);
    if (!hull)
    {
        return 0.0;
    }
    if (!hull->finite())
    {
        return inf;
    }
    return integrate(mu, [](double) { return 1.0; }, *hull, tol);
}

//! Points where a kernel integrand against mu may lose smoothness.
inline std::vector<double> kink_points(SmoothMeasure const& mu)
{
    std::vector<double> out;
    std::visit(
        [&](auto const& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Density>)
            {
                out.push_back(m.support.lo);
                out.push_back(m.support.hi);
                out.insert(out.end(), m.singular_points.begin(), m.singular_points.end());
            }
            else if constexpr (std::is_same_v<T, Dirac>)
            {
                out.push_back(m.x);
            }
            else if constexpr (std::is_same_v<T, WeightedSum>)
            {
                for (auto const& t : m.terms)
                {
                    auto k = kink_points(*t.measure);
                    out.insert(out.end(), k.begin(), k.end());
                }
            }
            else
            {
                out.push_back(0.0);
                out.push_back(1.0);
            }
        },
        mu.get());
    return out;
}

//---------------------------------------------------------------------------//
// Sampling
//---------------------------------------------------------------------------//

/*!
 * Draws points from mu normalized to a probability measure.
 *
 * Densities are tabulated once: cell masses by Gauss-Kronrod, then a
 * cumulative table that is inverted by binary search with a uniform draw
 * inside the selected cell.
 */
class MeasureSampler
{
  public:
    explicit MeasureSampler(SmoothMeasure mu, int cells = 4096) : mu_(std::move(mu))
    {
        build(mu_, cells);
    }

    double operator()(RandomStream& rng) const
    {
        std::size_t dens_slot = 0;
        std::size_t sum_slot = 0;
        return draw_impl(mu_, rng, dens_slot, sum_slot);
    }

    double mass() const noexcept { return mass_; }

  private:
    SmoothMeasure mu_;
    double mass_{0};
    // One table per density node, in depth-first order.
    std::vector<std::vector<double>> cdf_;
    std::vector<Interval> cdf_range_;
    std::vector<std::vector<double>> term_cdf_;

    double build(SmoothMeasure const& mu, int cells)
    {
        double m = std::visit(
            [&](auto const& node) -> double {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Density>)
                {
                    if (!node.support.finite())
                    {
                        throw UnsupportedError("cannot sample an infinite-mass density; "
                                               "restrict it to a window first");
                    }
                    std::vector<double> cdf(cells + 1, 0.0);
                    double const step = node.support.length() / cells;
                    for (int i = 0; i < cells; ++i)
                    {
                        double const a = node.support.lo + i * step;
                        auto r = integrate_adaptive(node.f, a, a + step, QuadOptions{1e-12, 1e-10});
                        cdf[i + 1] = cdf[i] + std::max(r.value, 0.0);
                    }
                    double const total = cdf.back();
                    cdf_.push_back(std::move(cdf));
                    cdf_range_.push_back(node.support);
                    return total;
                }
                else if constexpr (std::is_same_v<T, WeightedSum>)
                {
                    std::size_t const slot = term_cdf_.size();
                    term_cdf_.emplace_back();
                    std::vector<double> cum{0.0};
                    for (auto const& t : node.terms)
                    {
                        double const sub = build(*t.measure, cells);
                        cum.push_back(cum.back() + t.coefficient * sub);
                    }
                    double const total = cum.back();
                    term_cdf_[slot] = std::move(cum);
                    return total;
                }
                else
                {
                    return 1.0;
                }
            },
            mu.get());
        mass_ = m;
        return m;
    }

    // The slot counters walk the tables in the order build() created them.
    static void skip_tables(SmoothMeasure const& mu, std::size_t& dens_slot,
                            std::size_t& sum_slot)
    {
        if (mu.as<Density>())
        {
            ++dens_slot;
        }
        else if (auto const* s = mu.as<WeightedSum>())
        {
            ++sum_slot;
            for (auto const& t : s->terms)
            {
                skip_tables(*t.measure, dens_slot, sum_slot);
            }
        }
    }

    double draw_impl(SmoothMeasure const& mu, RandomStream& rng, std::size_t& dens_slot,
                     std::size_t& sum_slot) const
    {
        if (mu.as<Density>())
        {
            auto const& cdf = cdf_[dens_slot];
            auto const range = cdf_range_[dens_slot];
            ++dens_slot;
            if (!(cdf.back() > 0))
            {
                throw UnsupportedError("cannot sample a zero-mass density");
            }
            double const target = rng.uniform() * cdf.back();
            auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
            auto const cell = static_cast<std::size_t>(
                std::clamp<std::ptrdiff_t>(it - cdf.begin() - 1, 0,
                                           static_cast<std::ptrdiff_t>(cdf.size()) - 2));
            double const step = range.length() / static_cast<double>(cdf.size() - 1);
            return range.lo + (static_cast<double>(cell) + rng.uniform()) * step;
        }
        if (auto const* d = mu.as<Dirac>())
        {
            return d->x;
        }
        if (auto const* c = mu.as<CantorLevel>())
        {
            double x = 0;
            double scale = 1.0;
            for (int k = 0; k < c->n; ++k)
            {
                scale /= 3.0;
                if (rng() >> 63)
                {
                    x += 2.0 * scale;
                }
            }
            return x + rng.uniform() * scale;
        }
        if (mu.as<CantorLimit>())
        {
            double x = 0;
            double scale = 1.0;
            for (int k = 0; k < 40; ++k)
            {
                scale /= 3.0;
                if (rng() >> 63)
                {
                    x += 2.0 * scale;
                }
            }
            return x;
        }
        auto const& s = *mu.as<WeightedSum>();
        auto const& cum = term_cdf_[sum_slot];
        ++sum_slot;
        if (!(cum.back() > 0))
        {
            throw UnsupportedError("cannot sample the zero measure");
        }
        double const target = rng.uniform() * cum.back();
        std::size_t chosen = 0;
        while (chosen + 1 < s.terms.size() && cum[chosen + 1] <= target)
        {
            ++chosen;
        }
        for (std::size_t i = 0; i < s.terms.size(); ++i)
        {
            if (i == chosen)
            {
                return draw_impl(*s.terms[i].measure, rng, dens_slot, sum_slot);
            }
            skip_tables(*s.terms[i].measure, dens_slot, sum_slot);
        }
        return 0.0;
    }
};

//! One draw from mu normalized (builds a throwaway sampler).
inline double sample(SmoothMeasure const& mu, RandomStream& rng)
{
    return MeasureSampler{mu}(rng);
}

}  // namespace revuz
