//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/kernels.hpp
//! Green kernels, resolvents, alpha-potentials, energies and the metric rho.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "error.hpp"
#include "measures.hpp"
#include "models.hpp"
#include "quadrature.hpp"

namespace revuz
{

//---------------------------------------------------------------------------//
/*!
 * alpha-order Green function g_alpha(x, y).
 *
 * FreeBM: (2 alpha)^{-1/2} exp(-sqrt(2 alpha)|x - y|).
 * AbsorbedBM: method of images,
 *   (2 alpha)^{-1/2} (exp(-sqrt(2 alpha)|x - y|) - exp(-sqrt(2 alpha)(x + y))).
 * Both expressions are symmetric in (x, y) bit for bit.
 */
inline double green(ProcessModel const& model, double alpha, double x, double y)
{
    if (!model.kernel_based())
    {
        throw UnsupportedError("green: " + std::string(model.name())
                               + " has no resolvent kernel; use resolvent_apply");
    }
    model.require_state(x);
    model.require_state(y);
    double const c = std::sqrt(2.0 * alpha);
    double const direct = std::exp(-c * std::fabs(x - y));
    if (model.kind() == ModelKind::FreeBM)
    {
        return direct / c;
    }
    return (direct - std::exp(-c * (x + y))) / c;
}

//! Unchecked kernel used inside quadrature loops (x, y already validated).
inline double green_unchecked(ModelKind kind, double c, double x, double y) noexcept
{
    double const direct = std::exp(-c * std::fabs(x - y));
    if (kind == ModelKind::FreeBM)
    {
        return direct / c;
    }
    return (direct - std::exp(-c * (x + y))) / c;
}

//---------------------------------------------------------------------------//
/*!
 * R_alpha f(x) = int_0^inf e^{-alpha t} P_t f(x) dt.
 *
 * KilledStatic: f(x) / (alpha + g(x)).
 * FlipJump: even part / alpha + odd part / (alpha + 2).
 * Diffusions: kernel quadrature, truncated where the kernel tail mass is
 * below tol * e^-10 / c^2 (relative to a unit bound on f).
 */
inline double resolvent_apply(ProcessModel const& model, double alpha, RealFn const& f,
                              double x, double tol = 1e-10)
{
    model.require_state(x);
    switch (model.kind())
    {
        case ModelKind::KilledStatic:
        {
            double const v = f(x);
            if (!std::isfinite(v))
            {
                throw NumericError("resolvent_apply: f is not finite at x", v, inf);
            }
            return v / (alpha + 1.0 / (x * x));
        }
        case ModelKind::FlipJump:
        {
            double const a = f(x);
            double const b = f(-x);
            if (!std::isfinite(a) || !std::isfinite(b))
            {
                throw NumericError("resolvent_apply: f is not finite on the orbit", a + b, inf);
            }
            return 0.5 * (a + b) / alpha + 0.5 * (a - b) / (alpha + 2.0);
        }
        default:
            break;
    }
    double const c = std::sqrt(2.0 * alpha);
    double const reach = (std::log(1.0 / tol) + 10.0) / c;
    double const lo = model.kind() == ModelKind::AbsorbedBM ? 0.0 : x - reach;
    double const hi = x + reach;
    auto const kind = model.kind();
    auto integrand = [&](double y) {
        double const v = f(y);
        if (!std::isfinite(v))
        {
            throw NumericError("resolvent_apply: f is unbounded on the window", v, inf);
        }
        return green_unchecked(kind, c, x, y) * v;
    };
    double const bp[] = {x};
    return integrate_adaptive(integrand, lo, hi, QuadOptions{tol}, bp).value;
}

//! Value of mu's density at x (zero outside every density support).
inline double density_at(SmoothMeasure const& mu, double x)
{
    if (auto const* d = mu.as<Density>())
    {
        return (x > d->support.lo && x < d->support.hi) ? d->f(x) : 0.0;
    }
    if (auto const* s = mu.as<WeightedSum>())
    {
        double v = 0;
        for (auto const& t : s->terms)
        {
            v += t.coefficient * density_at(*t.measure, x);
        }
        return v;
    }
    throw UnsupportedError("measure has no density with respect to m; its "
                           "potential is not defined for non-diffusive models");
}

//---------------------------------------------------------------------------//
/*!
 * x -> U_alpha mu(x).
 *
 * For diffusions this is int g_alpha(x, y) dmu(y); for the two jump/static
 * models mu must have a density f and U_alpha mu = R_alpha f.
 */
class Potential
{
  public:
    Potential(ProcessModel model, double alpha, SmoothMeasure mu, double tol = 1e-11)
        : model_(model), alpha_(alpha), mu_(std::move(mu)), tol_(tol)
    {
        if (!(alpha > 0))
        {
            throw DomainError("potential: alpha must be positive");
        }
        hull_ = support_hull(mu_);
        kinks_ = kink_points(mu_);
    }

    double operator()(double x) const
    {
        model_.require_state(x);
        if (!hull_)
        {
            return 0.0;
        }
        if (!model_.kernel_based())
        {
            double const f = density_at(mu_, x);
            if (model_.kind() == ModelKind::KilledStatic)
            {
                return f / (alpha_ + 1.0 / (x * x));
            }
            double const fr = density_at(mu_, -x);
            return 0.5 * (f + fr) / alpha_ + 0.5 * (f - fr) / (alpha_ + 2.0);
        }
        double const c = std::sqrt(2.0 * alpha_);
        auto const kind = model_.kind();
        IntegrateOptions opt;
        opt.breakpoints = {x};
        opt.lipschitz = 1.0;  // |d/dy g_alpha| <= 1 for both diffusion kernels
        return integrate(
            mu_, [kind, c, x](double y) { return green_unchecked(kind, c, x, y); }, *hull_,
            tol_, opt);
    }

    ProcessModel const& model() const noexcept { return model_; }
    double alpha() const noexcept { return alpha_; }
    SmoothMeasure const& measure() const noexcept { return mu_; }

  private:
    ProcessModel model_;
    double alpha_;
    SmoothMeasure mu_;
    double tol_;
    std::optional<Interval> hull_;
    std::vector<double> kinks_;
};

//---------------------------------------------------------------------------//
/*!
 * Potential sampled on a uniform grid with linear interpolation, for use
 * inside path loops. Outside the table the exact potential is evaluated.
 */
class TabulatedPotential
{
  public:
    TabulatedPotential(Potential const& u, Interval range, int nodes = 20001)
        : exact_(u), range_(range)
    {
        auto const space = u.model().state_space();
        range_.lo = std::max(range_.lo, space.lo);
        range_.hi = std::min(range_.hi, space.hi);
        step_ = range_.length() / (nodes - 1);
        values_.resize(nodes);
        for (int i = 0; i < nodes; ++i)
        {
            double x = range_.lo + i * step_;
            // Open state spaces: nudge the end nodes inside.
            if (!u.model().in_state_space(x))
            {
                x = i == 0 ? std::nextafter(x, inf) : std::nextafter(x, -inf);
            }
            values_[i] = u(x);
        }
    }

    double operator()(double x) const
    {
        if (!(x >= range_.lo && x <= range_.hi))
        {
            return exact_(x);
        }
        double const pos = (x - range_.lo) / step_;
        auto const i = std::min(static_cast<std::size_t>(pos), values_.size() - 2);
        double const w = pos - static_cast<double>(i);
        return values_[i] + w * (values_[i + 1] - values_[i]);
    }

  private:
    Potential exact_;
    Interval range_;
    double step_{0};
    std::vector<double> values_;
};

namespace detail
{
inline double inner_tolerance(SmoothMeasure const& mu, double tol)
{
    double const mass = total_mass(mu, 1e-8);
    if (!std::isfinite(mass) || mass <= 0)
    {
        return tol * 1e-3;
    }
    return tol / (10.0 * std::max(1.0, mass));
}
}  // namespace detail

/*!
 * E_alpha(U_alpha mu, U_alpha nu) = int U_alpha nu dmu.
 */
inline double energy(ProcessModel const& model, double alpha, SmoothMeasure const& mu,
                     SmoothMeasure const& nu, double tol = 1e-10)
{
    auto const hull = support_hull(mu);
    if (!hull || nu.is_zero() || mu.is_zero())
    {
        return 0.0;
    }
    Potential const u{model, alpha, nu, model.kernel_based() ? detail::inner_tolerance(mu, tol) : tol};
    IntegrateOptions opt;
    opt.breakpoints = kink_points(nu);
    opt.lipschitz = std::max(1.0, total_mass(nu, 1e-8));
    return integrate(mu, [&u](double x) { return u(x); }, *hull, tol, opt);
}

namespace detail
{
inline bool density_only(SmoothMeasure const& mu)
{
    if (mu.as<Density>())
    {
        return true;
    }
    if (auto const* s = mu.as<WeightedSum>())
    {
        return std::all_of(s->terms.begin(), s->terms.end(),
                           [](auto const& t) { return density_only(*t.measure); });
    }
    return false;
}

inline void collect_singular(SmoothMeasure const& mu, std::vector<double>& out)
{
    if (auto const* d = mu.as<Density>())
    {
        out.insert(out.end(), d->singular_points.begin(), d->singular_points.end());
        out.push_back(d->support.lo);
        out.push_back(d->support.hi);
    }
    else if (auto const* s = mu.as<WeightedSum>())
    {
        for (auto const& t : s->terms)
        {
            collect_singular(*t.measure, out);
        }
    }
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * rho(mu, nu) = sqrt(E_1(U_1 mu - U_1 nu)).
 *
 * Diffusions use the bilinear expansion E(mu,mu) - 2E(mu,nu) + E(nu,nu);
 * a negative result within 4 tol is round-off and clamps to 0, anything
 * larger throws.
 *
 * For KilledStatic and FlipJump with two densities the energy is local,
 * int (f - h) R_1(f - h) dx, and is evaluated on the pointwise difference:
 * the individual terms can diverge (e.g. f = 1 + x^-2 on (0,1)) while the
 * difference stays finite.
 */
inline double rho_squared(ProcessModel const& model, SmoothMeasure const& mu,
                          SmoothMeasure const& nu, double tol = 2.5e-10)
{
    constexpr double alpha = 1.0;
    if (!model.kernel_based() && detail::density_only(mu) && detail::density_only(nu))
    {
        auto h1 = support_hull(mu);
        auto h2 = support_hull(nu);
        if (!h1 && !h2)
        {
            return 0.0;
        }
        Interval hull = h1 && h2 ? Interval{std::min(h1->lo, h2->lo), std::max(h1->hi, h2->hi)}
                                 : (h1 ? *h1 : *h2);
        if (model.kind() == ModelKind::FlipJump)
        {
            double const r = std::max(std::fabs(hull.lo), std::fabs(hull.hi));
            hull = {-r, r};
        }
        auto space = model.state_space();
        hull.lo = std::max(hull.lo, space.lo);
        hull.hi = std::min(hull.hi, space.hi);
        if (!hull.finite())
        {
            throw UnsupportedError("rho: densities with unbounded support");
        }
        auto diff = [&](double x) { return density_at(mu, x) - density_at(nu, x); };
        auto integrand = [&](double x) {
            double const d = diff(x);
            if (model.kind() == ModelKind::KilledStatic)
            {
                return d * d / (alpha + 1.0 / (x * x));
            }
            double const dr = diff(-x);
            return d * (0.5 * (d + dr) / alpha + 0.5 * (d - dr) / (alpha + 2.0));
        };
        std::vector<double> cuts;
        detail::collect_singular(mu, cuts);
        detail::collect_singular(nu, cuts);
        if (model.kind() == ModelKind::FlipJump)
        {
            std::size_t const n = cuts.size();
            for (std::size_t i = 0; i < n; ++i)
            {
                cuts.push_back(-cuts[i]);
            }
        }
        QuadOptions q;
        q.abs_tol = tol;
        q.max_panels = 20000;
        return std::max(0.0, integrate_adaptive(integrand, hull.lo, hull.hi, q, cuts).value);
    }
    double const mm = energy(model, alpha, mu, mu, tol);
    double const mn = energy(model, alpha, mu, nu, tol);
    double const nn = energy(model, alpha, nu, nu, tol);
    double const v = mm - 2.0 * mn + nn;
    if (v < 0)
    {
        if (-v <= 4.0 * tol)
        {
            return 0.0;
        }
        throw NumericError("rho: negative squared distance beyond tolerance", v, 4.0 * tol);
    }
    return v;
}

inline double rho(ProcessModel const& model, SmoothMeasure const& mu, SmoothMeasure const& nu,
                  double tol = 2.5e-10)
{
    return std::sqrt(rho_squared(model, mu, nu, tol));
}

//! E_{nu0}[(A~_inf)^2] = 2 int phi_{2 alpha} U_alpha mu dmu (AbsorbedBM only).
inline double nu0_pairing(ProcessModel const& model, double alpha, SmoothMeasure const& mu,
                          double tol = 1e-10)
{
    if (model.kind() != ModelKind::AbsorbedBM)
    {
        return 0.0;
    }
    auto const hull = support_hull(mu);
    if (!hull)
    {
        return 0.0;
    }
    Potential const u{model, alpha, mu, detail::inner_tolerance(mu, tol)};
    IntegrateOptions opt;
    opt.breakpoints = kink_points(mu);
    double const c = std::sqrt(4.0 * alpha);
    return 2.0 * integrate(mu, [&](double x) { return std::exp(-c * x) * u(x); }, *hull, tol, opt);
}

/*!
 * E_kappa[(A~_inf)^2]
 *   = 2 int (1 - 2 alpha R_{2 alpha} 1 - phi_{2 alpha}) U_alpha mu dmu.
 */
inline double kappa_pairing(ProcessModel const& model, double alpha, SmoothMeasure const& mu,
                            double tol = 1e-10)
{
    if (!model.has_killing())
    {
        return 0.0;
    }
    auto const hull = support_hull(mu);
    if (!hull)
    {
        return 0.0;
    }
    Potential const u{model, alpha, mu, tol};
    IntegrateOptions opt;
    opt.breakpoints = kink_points(mu);
    auto weight = [&](double x) {
        return 1.0 - alpha_resolvent_one(model, 2.0 * alpha, x) - phi(model, 2.0 * alpha, x);
    };
    return 2.0 * integrate(mu, [&](double x) { return weight(x) * u(x); }, *hull, tol, opt);
}

}  // namespace revuz
