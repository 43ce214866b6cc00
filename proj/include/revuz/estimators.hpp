//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/estimators.hpp
//! Monte Carlo expectations under m, kappa and nu0, and identity checks.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "kernels.hpp"
#include "measures.hpp"
#include "models.hpp"
#include "pcaf.hpp"
#include "reduce.hpp"
#include "rng.hpp"
#include "simulate.hpp"
#include "stats.hpp"

namespace revuz
{

struct McEstimate
{
    double mean{0};
    double std_error{0};
    std::size_t n{0};
    std::uint64_t seed{0};
    double tail_bound{0};
};

//! Lebesgue measure on a window, reported with the multiplier |W|.
struct MWindow
{
    Interval window;
};

//! Killing measure g dx on a window (models with a killing density).
struct Kappa
{
    Interval window;
};

/*!
 * Continuous-exit functional, estimated by the finite-difference entrance
 * formula (1/t) int E_x[F] (phi_{2a}(x) - e^{-2at} P_t phi_{2a}(x)) dx at
 * t0, t0/2, t0/4 and extrapolated linearly to t = 0. Starting points are
 * importance sampled.
 */
struct Nu0
{
    double alpha{1.0};
    double t0{0.01};
};

struct PointMass
{
    double x{0};
};

using Weighting = std::variant<MWindow, Kappa, Nu0, PointMass>;

//! One sample of a path functional with a bound on its truncation error.
struct PathValue
{
    double value{0};
    double tail_bound{0};
};

using PathFunctional = std::function<PathValue(Path const&)>;

struct McConfig
{
    SimConfig sim;
    std::size_t paths{100000};
    unsigned workers{default_workers()};
    //! Path index of the first sample; sample i uses rng_for(seed, first + i).
    std::uint64_t first_path{0};
};

namespace detail
{
struct Columns
{
    std::vector<std::vector<double>> values;
    std::vector<std::vector<double>> tails;
};

/*!
 * Fill a paths x k table with draw(rng, out), one stream per sample.
 * Slots are written by index, so the table does not depend on scheduling.
 */
template<class Draw>
Columns sample_columns(std::size_t k, McConfig const& cfg, Draw&& draw)
{
    Columns out;
    out.values.assign(k, std::vector<double>(cfg.paths));
    out.tails.assign(k, std::vector<double>(cfg.paths));
    parallel_for(cfg.paths, cfg.workers, [&](std::size_t i) {
        auto rng = rng_for(cfg.sim.seed, cfg.first_path + i);
        std::vector<PathValue> row(k);
        draw(rng, std::span<PathValue>(row));
        for (std::size_t j = 0; j < k; ++j)
        {
            if (!std::isfinite(row[j].value))
            {
                throw NumericError("monte carlo: nonfinite sample", row[j].value, inf);
            }
            out.values[j][i] = row[j].value;
            out.tails[j][i] = row[j].tail_bound;
        }
    });
    return out;
}

inline McEstimate reduce_column(std::vector<double>& values, std::vector<double> const& tails,
                                double multiplier, std::uint64_t seed)
{
    auto const me = mean_and_error(values);
    McEstimate out;
    out.mean = multiplier * me.mean;
    out.std_error = std::fabs(multiplier) * me.std_error;
    out.n = values.size();
    out.seed = seed;
    out.tail_bound = values.empty()
                         ? 0.0
                         : std::fabs(multiplier) * pairwise_sum(tails)
                               / static_cast<double>(values.size());
    return out;
}

//! Combine independent estimates with fixed coefficients.
inline McEstimate combine(std::span<McEstimate const> parts, std::span<double const> weights)
{
    McEstimate out;
    double var = 0;
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        out.mean += weights[i] * parts[i].mean;
        var += weights[i] * weights[i] * parts[i].std_error * parts[i].std_error;
        out.tail_bound += std::fabs(weights[i]) * parts[i].tail_bound;
        out.n += parts[i].n;
    }
    out.std_error = std::sqrt(var);
    out.seed = parts.empty() ? 0 : parts.front().seed;
    return out;
}

//! P_t phi_c(x) for Brownian motion killed at 0, phi_c(y) = e^{-c y}.
inline double absorbed_semigroup_exp(double c, double t, double x)
{
    double const s = std::sqrt(t);
    // e^{c^2 t / 2} [e^{-cx} Phi((x - ct)/s) - e^{cx} Phi(-(x + ct)/s)]
    double const a = std::exp(0.5 * c * c * t - c * x) * 0.5
                     * std::erfc(-(x - c * t) / (s * std::sqrt(2.0)));
    double const b = std::exp(0.5 * c * c * t + c * x) * 0.5
                     * std::erfc((x + c * t) / (s * std::sqrt(2.0)));
    return a - b;
}

inline void check_window(ProcessModel const& model, Interval w)
{
    auto const space = model.state_space();
    if (!w.finite() || !(w.lo < w.hi) || w.lo < space.lo || w.hi > space.hi)
    {
        throw DomainError("weighting window must be a bounded interval inside the state space");
    }
}

/*!
 * One weighting level: how to draw a start and the multiplier applied to
 * the sample mean. Nu0 levels also reweight each sample.
 */
struct StartRule
{
    std::function<double(RandomStream&)> start;
    std::function<double(double)> weight;
    double multiplier{1};
};

inline std::vector<StartRule> start_rules(ProcessModel const& model, Weighting const& w)
{
    return std::visit(
        [&](auto const& s) -> std::vector<StartRule> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, MWindow>)
            {
                check_window(model, s.window);
                double const lo = s.window.lo;
                double const len = s.window.length();
                return {StartRule{[lo, len](RandomStream& r) { return lo + len * r.uniform(); },
                                  nullptr, len}};
            }
            else if constexpr (std::is_same_v<T, Kappa>)
            {
                if (model.kind() != ModelKind::KilledStatic)
                {
                    throw DomainError("kappa weighting needs a model with a killing density");
                }
                check_window(model, s.window);
                if (!(s.window.lo > 0))
                {
                    throw DomainError("kappa weighting: window has infinite killing mass");
                }
                // inverse CDF of x^-2 on [a, b]
                double const ia = 1.0 / s.window.lo;
                double const ib = 1.0 / s.window.hi;
                return {StartRule{[ia, ib](RandomStream& r) {
                                      return 1.0 / (ia - r.uniform() * (ia - ib));
                                  },
                                  nullptr, ia - ib}};
            }
            else if constexpr (std::is_same_v<T, PointMass>)
            {
                model.require_state(s.x);
                double const x = s.x;
                return {StartRule{[x](RandomStream&) { return x; }, nullptr, 1.0}};
            }
            else
            {
                if (model.kind() != ModelKind::AbsorbedBM)
                {
                    throw DomainError("nu0 weighting needs the absorbed model");
                }
                if (!(s.alpha > 0) || !(s.t0 > 0))
                {
                    throw DomainError("nu0 weighting needs alpha > 0 and t0 > 0");
                }
                std::vector<StartRule> rules;
                double const c = std::sqrt(4.0 * s.alpha);
                for (int k = 0; k < 3; ++k)
                {
                    double const t = s.t0 / static_cast<double>(1 << k);
                    double const damp = std::exp(-2.0 * s.alpha * t);
                    // Starts follow the Rayleigh law (x/t) e^{-x^2/2t}, which
                    // tracks where the entrance weight meets E_x[F] ~ x;
                    // samples carry the likelihood ratio weight / density.
                    rules.push_back(StartRule{
                        [t](RandomStream& r) { return std::sqrt(-2.0 * t * std::log(r.uniform())); },
                        [c, t, damp](double x) {
                            double const w
                                = std::exp(-c * x) - damp * absorbed_semigroup_exp(c, t, x);
                            return w * t / x * std::exp(0.5 * x * x / t);
                        },
                        1.0 / t});
                }
                return rules;
            }
        },
        w);
}

//! Intercept weights of the least-squares line through (4, 2, 1).
inline constexpr double nu0_extrapolation[] = {-0.5, 0.5, 1.0};
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * E_w[F_j] for several functionals evaluated on the same paths.
 */
inline std::vector<McEstimate> expect_many(ProcessModel const& model, Weighting const& w,
                                           std::vector<PathFunctional> const& fs,
                                           McConfig const& cfg)
{
    cfg.sim.validate();
    auto const rules = detail::start_rules(model, w);
    std::vector<std::vector<McEstimate>> levels;
    for (std::size_t level = 0; level < rules.size(); ++level)
    {
        auto const& rule = rules[level];
        McConfig lc = cfg;
        lc.first_path = cfg.first_path + level * cfg.paths;
        auto cols = detail::sample_columns(fs.size(), lc, [&](RandomStream& rng,
                                                              std::span<PathValue> out) {
            double const x0 = rule.start(rng);
            thread_local Path path;
            simulate_path(model, x0, lc.sim, rng, path);
            double const scale = rule.weight ? rule.weight(x0) : 1.0;
            for (std::size_t j = 0; j < fs.size(); ++j)
            {
                PathValue v = fs[j](path);
                out[j] = {scale * v.value, std::fabs(scale) * v.tail_bound};
            }
        });
        std::vector<McEstimate> est;
        for (std::size_t j = 0; j < fs.size(); ++j)
        {
            est.push_back(detail::reduce_column(cols.values[j], cols.tails[j], rule.multiplier,
                                                cfg.sim.seed));
        }
        levels.push_back(std::move(est));
    }
    if (levels.size() == 1)
    {
        return levels.front();
    }
    std::vector<McEstimate> out;
    for (std::size_t j = 0; j < fs.size(); ++j)
    {
        std::vector<McEstimate> parts;
        for (auto const& l : levels)
        {
            parts.push_back(l[j]);
        }
        out.push_back(detail::combine(parts, detail::nu0_extrapolation));
    }
    return out;
}

inline McEstimate expect(ProcessModel const& model, Weighting const& w, PathFunctional f,
                         McConfig const& cfg)
{
    return expect_many(model, w, {std::move(f)}, cfg).front();
}

//---------------------------------------------------------------------------//
// Path functionals
//---------------------------------------------------------------------------//

//! A at the horizon.
inline PathFunctional terminal_functional(PcafSpec spec)
{
    return [spec = std::move(spec)](Path const& p) { return PathValue{terminal_value(spec, p)}; };
}

//! (A~_inf)^2 with the tail bound of the truncated square.
inline PathFunctional squared_discounted_functional(PcafSpec spec, double alpha)
{
    return [spec = std::move(spec), alpha](Path const& p) {
        auto const d = discounted_total(spec, p, alpha);
        double const b = d.tail_bound;
        return PathValue{d.value * d.value, 2.0 * d.value * b + b * b};
    };
}

//! sup_{t <= T} |A_t - B_t|^2 on the shared path.
inline PathFunctional sup_squared_functional(PcafSpec a, PcafSpec b, double horizon)
{
    return [a = std::move(a), b = std::move(b), horizon](Path const& p) {
        double const d = sup_distance(a, b, p, horizon);
        return PathValue{d * d};
    };
}

//! (A~_inf - B~_inf)^2 on the shared path.
inline PathFunctional discounted_squared_functional(PcafSpec a, PcafSpec b, double alpha)
{
    return [a = std::move(a), b = std::move(b), alpha](Path const& p) {
        auto const da = discounted_total(a, p, alpha);
        auto const db = discounted_total(b, p, alpha);
        double const d = std::fabs(da.value - db.value);
        double const t = da.tail_bound + db.tail_bound;
        return PathValue{d * d, 2.0 * d * t + t * t};
    };
}

//---------------------------------------------------------------------------//
// Distances
//---------------------------------------------------------------------------//

inline McEstimate sup_l2_distance(ProcessModel const& model, PcafSpec const& a,
                                  PcafSpec const& b, Weighting const& w, double horizon,
                                  McConfig cfg)
{
    cfg.sim.horizon = horizon;
    return expect(model, w, sup_squared_functional(a, b, horizon), cfg);
}

inline McEstimate discounted_l2_distance(ProcessModel const& model, PcafSpec const& a,
                                         PcafSpec const& b, Weighting const& w,
                                         McConfig const& cfg, double alpha = 1.0)
{
    return expect(model, w, discounted_squared_functional(a, b, alpha), cfg);
}

//---------------------------------------------------------------------------//
// Energy identity
//---------------------------------------------------------------------------//

struct EnergyIdentityReport
{
    //! alpha E_m[(A~_inf)^2] over the window
    McEstimate lhs_m;
    //! 1/2 E_kappa[(A~_inf)^2] by quadrature
    double kappa_term{0};
    //! 1/2 E_nu0[(A~_inf)^2] by quadrature
    double nu0_term{0};
    //! E_alpha(U_alpha mu, U_alpha mu) by quadrature
    double rhs{0};
    //! Certified bound on the m-part outside the window
    double exterior_bound{0};
    Interval window;
    double z{0};
};

struct EnergyIdentityOptions
{
    //! Start window for the m-part; default is the support enlarged until
    //! the exterior bound is below exterior_tol.
    std::optional<Interval> window;
    double exterior_tol{1e-6};
    double quad_tol{1e-10};
};

namespace detail
{
/*!
 * Bound on alpha int_{outside W} E_x[(A~_inf)^2] dx for a measure of total
 * mass M supported at distance >= d from the exterior, using
 * E_x[(A~_inf)^2] <= 2 |U| M sup_y g_{2 alpha}(x, y).
 */
inline double exterior_bound(ProcessModel const& model, double alpha, double mass, double d_lo,
                             double d_hi)
{
    if (!model.kernel_based())
    {
        return 0.0;
    }
    double const u_sup = mass / std::sqrt(2.0 * alpha);
    double const c = 2.0 * std::sqrt(alpha);
    double const g_sup = 1.0 / c;
    double side = 0;
    for (double d : {d_lo, d_hi})
    {
        if (std::isfinite(d))
        {
            side += std::exp(-c * d) / c;
        }
    }
    return alpha * 2.0 * u_sup * mass * g_sup * side;
}
}  // namespace detail

inline EnergyIdentityReport energy_identity_check(ProcessModel const& model, double alpha,
                                                  SmoothMeasure const& mu, McConfig const& cfg,
                                                  EnergyIdentityOptions const& opt = {})
{
    auto const hull = support_hull(mu);
    if (!hull || !hull->finite())
    {
        throw ConfigError("energy identity needs a compactly supported measure");
    }
    if (!(alpha > 0))
    {
        throw DomainError("energy identity needs alpha > 0");
    }
    auto const space = model.state_space();
    double const mass = total_mass(mu);
    EnergyIdentityReport r;
    // distance from the support to the exterior on each side (inf: no exterior)
    auto gaps = [&](Interval w) {
        double const lo = w.lo <= space.lo ? inf : hull->lo - w.lo;
        double const hi = w.hi >= space.hi ? inf : w.hi - hull->hi;
        return std::pair{lo, hi};
    };
    if (opt.window)
    {
        r.window = *opt.window;
    }
    else
    {
        double d = 1.0;
        for (;; d *= 1.25)
        {
            Interval w{std::max(space.lo, hull->lo - d), std::min(space.hi, hull->hi + d)};
            auto [a, b] = gaps(w);
            if (detail::exterior_bound(model, alpha, mass, a, b) <= opt.exterior_tol)
            {
                r.window = w;
                break;
            }
            if (d > 1e6)
            {
                throw ConfigError("energy identity: exterior bound unattainable");
            }
        }
    }
    if (r.window.lo > hull->lo || r.window.hi < hull->hi)
    {
        throw ConfigError("energy identity: window does not cover the support");
    }
    auto [a, b] = gaps(r.window);
    r.exterior_bound = detail::exterior_bound(model, alpha, mass, a, b);

    auto const spec = PcafSpec::from_density(mu);
    r.lhs_m = expect(model, MWindow{r.window}, squared_discounted_functional(spec, alpha), cfg);
    r.lhs_m.mean *= alpha;
    r.lhs_m.std_error *= alpha;
    r.lhs_m.tail_bound *= alpha;
    r.kappa_term = 0.5 * kappa_pairing(model, alpha, mu, opt.quad_tol);
    r.nu0_term = 0.5 * nu0_pairing(model, alpha, mu, opt.quad_tol);
    r.rhs = energy(model, alpha, mu, mu, opt.quad_tol);
    double const lhs = r.lhs_m.mean + r.kappa_term + r.nu0_term;
    r.z = r.lhs_m.std_error > 0 ? (lhs - r.rhs) / r.lhs_m.std_error : (lhs == r.rhs ? 0 : inf);
    return r;
}

//---------------------------------------------------------------------------//
/*!
 * E_x[M_T] for M_t = U(X_t) - U(X_0) - alpha int_0^t U(X_s) ds + A_t,
 * U = U_alpha mu, with U(cemetery) = 0. Diffusions use a tabulated potential.
 */
inline McEstimate fukushima_residual(ProcessModel const& model, double alpha,
                                     SmoothMeasure const& mu, double x, McConfig cfg)
{
    model.require_state(x);
    cfg.sim.validate();
    Potential const exact{model, alpha, mu};
    RealFn u;
    if (model.kernel_based() && support_hull(mu))
    {
        double const reach = 10.0 * std::sqrt(cfg.sim.horizon) + 1.0;
        auto table = std::make_shared<TabulatedPotential>(exact, Interval{x - reach, x + reach});
        u = [table](double y) { return (*table)(y); };
    }
    else
    {
        u = [exact](double y) { return exact(y); };
    }
    auto const uspec = PcafSpec{DensityPcaf{u, inf, "potential"}};
    PcafSpec const aspec = mu.is_zero() ? PcafSpec{DensityPcaf{[](double) { return 0.0; }, 0.0,
                                                                "zero"}}
                                        : PcafSpec::from_density(mu);
    double const u0 = u(x);
    PathFunctional f = [&](Path const& p) {
        double const end = p.states.back();
        double const ut = is_cemetery(end) ? 0.0 : u(end);
        return PathValue{ut - u0 - alpha * terminal_value(uspec, p) + terminal_value(aspec, p)};
    };
    return expect(model, PointMass{x}, f, cfg);
}

//---------------------------------------------------------------------------//
/*!
 * E_x[e^{-sigma_y}] for Brownian motion; paths that miss y before the
 * horizon contribute 0 and e^{-T} to the tail bound.
 */
inline McEstimate hitting_laplace_check(double x, double y, McConfig const& cfg)
{
    cfg.sim.validate();
    double const miss = std::exp(-cfg.sim.horizon);
    auto cols = detail::sample_columns(1, cfg, [&](RandomStream& rng, std::span<PathValue> out) {
        double const s = brownian_hitting_time(x, y, cfg.sim, rng);
        out[0] = std::isfinite(s) ? PathValue{std::exp(-s), 0.0} : PathValue{0.0, miss};
    });
    return detail::reduce_column(cols.values[0], cols.tails[0], 1.0, cfg.sim.seed);
}

//---------------------------------------------------------------------------//
/*!
 * Table of int f_j dmu_i by quadrature with per-column trend statistics of
 * |value - reference| along the sequence.
 */
struct VagueTable
{
    std::vector<std::vector<double>> values;
    std::vector<std::vector<double>> deviations;
    std::vector<double> tau;
    std::vector<double> p_value;
};

inline VagueTable vague_probe(std::vector<SmoothMeasure> const& seq,
                              std::vector<RealFn> const& tests, Interval window,
                              std::optional<SmoothMeasure> const& reference = std::nullopt,
                              double tol = 1e-10)
{
    VagueTable t;
    std::vector<double> ref(tests.size(), 0.0);
    if (reference)
    {
        for (std::size_t j = 0; j < tests.size(); ++j)
        {
            ref[j] = integrate(*reference, tests[j], window, tol);
        }
    }
    for (auto const& mu : seq)
    {
        std::vector<double> row;
        std::vector<double> dev;
        for (std::size_t j = 0; j < tests.size(); ++j)
        {
            double const v = integrate(mu, tests[j], window, tol);
            row.push_back(v);
            dev.push_back(std::fabs(v - ref[j]));
        }
        t.values.push_back(std::move(row));
        t.deviations.push_back(std::move(dev));
    }
    std::vector<double> index(seq.size());
    for (std::size_t i = 0; i < index.size(); ++i)
    {
        index[i] = static_cast<double>(i);
    }
    for (std::size_t j = 0; j < tests.size(); ++j)
    {
        std::vector<double> col;
        for (auto const& d : t.deviations)
        {
            col.push_back(d[j]);
        }
        double const tau = kendall_tau(index, col);
        t.tau.push_back(tau);
        t.p_value.push_back(kendall_lower_p_value(tau, col.size()));
    }
    return t;
}

}  // namespace revuz
