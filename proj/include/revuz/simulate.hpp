//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/simulate.hpp
//! Path simulation for the reference processes.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <vector>

#include "error.hpp"
#include "models.hpp"
#include "rng.hpp"

namespace revuz
{

struct SimConfig
{
    double dt{1e-3};
    double horizon{1.0};
    bool bridge_correction{true};
    std::uint64_t seed{20240607};
    std::uint64_t path_index{0};

    void validate() const
    {
        if (!(dt > 0) || !(horizon > 0) || dt > horizon)
        {
            throw ConfigError("simulation needs 0 < dt <= horizon");
        }
    }

    std::size_t steps() const
    {
        return static_cast<std::size_t>(std::llround(horizon / dt));
    }
};

//! Marker stored in state slots at or after the lifetime.
inline constexpr double cemetery = std::numeric_limits<double>::quiet_NaN();

inline bool is_cemetery(double x) noexcept
{
    return std::isnan(x);
}

//---------------------------------------------------------------------------//
/*!
 * Simulated trajectory.
 *
 * Diffusion paths carry a uniform grid up to the horizon; FlipJump and
 * KilledStatic carry event times (plus the horizon). The state on
 * [t_i, t_{i+1}) is states[i] for event grids; diffusion states are point
 * samples. Every slot with t_i >= zeta holds the cemetery marker.
 */
struct Path
{
    ModelKind model{ModelKind::FreeBM};
    std::vector<double> times;
    std::vector<double> states;
    double zeta{inf};
    ExitKind exit{ExitKind::Alive};
    //! True for event-driven (piecewise constant) paths.
    bool piecewise_constant{false};

    double horizon() const noexcept { return times.empty() ? 0.0 : times.back(); }
    double start() const noexcept { return states.front(); }
    bool killed() const noexcept { return exit != ExitKind::Alive; }

    //! Index of the last grid point strictly before zeta (or last point).
    std::size_t last_alive() const noexcept
    {
        std::size_t i = states.size();
        while (i > 0 && is_cemetery(states[i - 1]))
        {
            --i;
        }
        return i == 0 ? 0 : i - 1;
    }
};

namespace detail
{
/*!
 * Bernoulli(exp(-2 a b / dt)): did a Brownian bridge between distances a > 0
 * and b > 0 from a barrier touch it? Exponents above 38 give probabilities
 * below the smallest uniform variate, so no draw is consumed for them.
 */
inline bool bridge_hit(double a, double b, double dt, RandomStream& rng) noexcept
{
    double const expo = 2.0 * a * b / dt;
    if (expo > 38.0)
    {
        return false;
    }
    return rng.uniform() < std::exp(-expo);
}

//! Brownian steps on a uniform grid, optionally absorbed at 0.
inline void brownian_fill(Path& path, double x0, SimConfig const& cfg, RandomStream& rng,
                          bool absorbing)
{
    std::size_t const n = cfg.steps();
    double const sd = std::sqrt(cfg.dt);
    path.times.resize(n + 1);
    path.states.resize(n + 1);
    path.times[0] = 0.0;
    path.states[0] = x0;
    double x = x0;
    for (std::size_t i = 1; i <= n; ++i)
    {
        path.times[i] = static_cast<double>(i) * cfg.dt;
        double const next = x + sd * rng.normal();
        if (absorbing)
        {
            double hit_time = -1;
            if (next <= 0.0)
            {
                hit_time = path.times[i - 1] + cfg.dt * x / (x - next);
            }
            else if (cfg.bridge_correction && bridge_hit(x, next, cfg.dt, rng))
            {
                hit_time = path.times[i - 1] + cfg.dt * rng.uniform();
            }
            if (hit_time >= 0)
            {
                path.zeta = hit_time;
                path.exit = ExitKind::ContinuousExit;
                for (std::size_t j = i; j <= n; ++j)
                {
                    path.times[j] = static_cast<double>(j) * cfg.dt;
                    path.states[j] = cemetery;
                }
                return;
            }
        }
        path.states[i] = next;
        x = next;
    }
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Simulate one path from x0.
 *
 * FreeBM: exact Gaussian increments. AbsorbedBM: Gaussian increments with
 * absorption on a sign change (linearly interpolated lifetime) or, with the
 * bridge correction, with probability exp(-2 x_i x_{i+1} / dt) between two
 * positive states (lifetime uniform inside the step). FlipJump: exact
 * flips at Exp(1) clock times. KilledStatic: constant until an exact
 * Exp(g(x0)) lifetime.
 */
inline void simulate_path(ProcessModel const& model, double x0, SimConfig const& cfg,
                          RandomStream& rng, Path& path)
{
    model.require_state(x0);
    cfg.validate();
    // reuse the buffers of `path`
    path.model = model.kind();
    path.zeta = inf;
    path.exit = ExitKind::Alive;
    path.piecewise_constant = false;
    path.times.clear();
    path.states.clear();
    switch (model.kind())
    {
        case ModelKind::FreeBM:
            detail::brownian_fill(path, x0, cfg, rng, false);
            break;
        case ModelKind::AbsorbedBM:
            detail::brownian_fill(path, x0, cfg, rng, true);
            break;
        case ModelKind::FlipJump:
        {
            path.piecewise_constant = true;
            double t = 0;
            double x = x0;
            path.times.push_back(0.0);
            path.states.push_back(x);
            for (;;)
            {
                t += rng.exponential(1.0);
                if (t >= cfg.horizon)
                {
                    break;
                }
                x = -x;
                path.times.push_back(t);
                path.states.push_back(x);
            }
            path.times.push_back(cfg.horizon);
            path.states.push_back(x);
            break;
        }
        case ModelKind::KilledStatic:
        {
            path.piecewise_constant = true;
            double const g = 1.0 / (x0 * x0);
            double const zeta = rng.exponential(g);
            // zeta is kept even beyond the horizon; exit records the window
            path.zeta = zeta;
            path.times.push_back(0.0);
            path.states.push_back(x0);
            if (zeta < cfg.horizon)
            {
                path.exit = ExitKind::KilledByKappa;
                path.times.push_back(zeta);
                path.states.push_back(cemetery);
                path.times.push_back(cfg.horizon);
                path.states.push_back(cemetery);
            }
            else
            {
                path.times.push_back(cfg.horizon);
                path.states.push_back(x0);
            }
            break;
        }
    }
}

inline Path simulate_path(ProcessModel const& model, double x0, SimConfig const& cfg,
                          RandomStream& rng)
{
    Path path;
    simulate_path(model, x0, cfg, rng, path);
    return path;
}

//---------------------------------------------------------------------------//
/*!
 * First hitting time of `level` for Brownian motion from x0, detected by
 * grid crossing (linear interpolation) or, between two same-side states,
 * by the bridge probability exp(-2 (level - x_i)(level - x_{i+1}) / dt).
 * Returns inf when the level is not reached before the horizon.
 */
inline double brownian_hitting_time(double x0, double level, SimConfig const& cfg,
                                    RandomStream& rng)
{
    cfg.validate();
    if (x0 == level)
    {
        return 0.0;
    }
    std::size_t const n = cfg.steps();
    double const sd = std::sqrt(cfg.dt);
    double x = x0 - level;  // distance, sign fixed until the hit
    double const side = x > 0 ? 1.0 : -1.0;
    x *= side;
    for (std::size_t i = 1; i <= n; ++i)
    {
        double const t0 = static_cast<double>(i - 1) * cfg.dt;
        double const next = x + sd * rng.normal();
        if (next <= 0.0)
        {
            return t0 + cfg.dt * x / (x - next);
        }
        if (cfg.bridge_correction && detail::bridge_hit(x, next, cfg.dt, rng))
        {
            return t0 + cfg.dt * rng.uniform();
        }
        x = next;
    }
    return inf;
}

//! CSV dump (t, x, alive) for debugging.
inline void write_path_csv(std::ostream& os, Path const& path)
{
    os << "t,x,alive\n";
    os.precision(17);
    for (std::size_t i = 0; i < path.times.size(); ++i)
    {
        bool const alive = !is_cemetery(path.states[i]);
        os << path.times[i] << ',';
        if (alive)
        {
            os << path.states[i];
        }
        os << ',' << (alive ? 1 : 0) << '\n';
    }
}

}  // namespace revuz
