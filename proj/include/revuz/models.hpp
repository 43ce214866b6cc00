//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/models.hpp
//! The four reference Hunt processes and their closed-form quantities.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "error.hpp"

namespace revuz
{

inline constexpr double inf = std::numeric_limits<double>::infinity();

//! Closed interval [lo, hi] (used for windows and compact sets).
struct Interval
{
    double lo{0};
    double hi{0};

    constexpr double length() const noexcept { return hi - lo; }
    constexpr bool contains(double x) const noexcept { return x >= lo && x <= hi; }
    constexpr bool finite() const noexcept
    {
        return std::isfinite(lo) && std::isfinite(hi);
    }
};

enum class ModelKind
{
    FreeBM,
    AbsorbedBM,
    FlipJump,
    KilledStatic
};

enum class ExitKind
{
    Alive,
    KilledByKappa,
    ContinuousExit
};

//---------------------------------------------------------------------------//
/*!
 * Descriptor of one reference process.
 *
 * State spaces are open intervals; the reference measure is always Lebesgue
 * measure on the state space.
 *  - FreeBM: Brownian motion on R.
 *  - AbsorbedBM: Brownian motion on (0, inf) killed on reaching 0.
 *  - FlipJump: x -> -x at the events of a rate-1 Poisson clock.
 *  - KilledStatic: does not move on (0, 1); killed at rate g(x) = x^-2.
 */
class ProcessModel
{
  public:
    constexpr explicit ProcessModel(ModelKind kind) noexcept : kind_(kind) {}

    constexpr ModelKind kind() const noexcept { return kind_; }

    //! Open state space (lo, hi).
    constexpr Interval state_space() const noexcept
    {
        switch (kind_)
        {
            case ModelKind::AbsorbedBM:
                return {0.0, inf};
            case ModelKind::KilledStatic:
                return {0.0, 1.0};
            default:
                return {-inf, inf};
        }
    }

    constexpr bool in_state_space(double x) const noexcept
    {
        auto const s = state_space();
        return x > s.lo && x < s.hi;
    }

    constexpr bool conservative() const noexcept
    {
        return kind_ == ModelKind::FreeBM || kind_ == ModelKind::FlipJump;
    }

    constexpr bool has_killing() const noexcept
    {
        return kind_ == ModelKind::KilledStatic;
    }

    //! True when the resolvent has a Green kernel (diffusion models).
    constexpr bool kernel_based() const noexcept
    {
        return kind_ == ModelKind::FreeBM || kind_ == ModelKind::AbsorbedBM;
    }

    //! Killing density g; absent for all but KilledStatic.
    std::optional<double> killing_density(double x) const
    {
        require_state(x);
        if (!has_killing())
        {
            return std::nullopt;
        }
        return 1.0 / (x * x);
    }

    void require_state(double x) const
    {
        if (!in_state_space(x))
        {
            throw DomainError("point " + std::to_string(x)
                              + " outside the state space of " + std::string(name()));
        }
    }

    constexpr std::string_view name() const noexcept
    {
        switch (kind_)
        {
            case ModelKind::FreeBM:
                return "free_bm";
            case ModelKind::AbsorbedBM:
                return "absorbed_bm";
            case ModelKind::FlipJump:
                return "flip_jump";
            case ModelKind::KilledStatic:
                return "killed_static";
        }
        return "unknown";
    }

  private:
    ModelKind kind_;
};

inline ProcessModel model_from_name(std::string_view name)
{
    for (auto k : {ModelKind::FreeBM, ModelKind::AbsorbedBM, ModelKind::FlipJump,
                   ModelKind::KilledStatic})
    {
        if (ProcessModel{k}.name() == name)
        {
            return ProcessModel{k};
        }
    }
    throw ConfigError("unknown model '" + std::string(name) + "'");
}

//---------------------------------------------------------------------------//
/*!
 * phi_alpha(x) = E_x[exp(-alpha zeta); X_{zeta-} = cemetery].
 *
 * Nonzero only for AbsorbedBM, where it is the Laplace transform of the
 * hitting time of 0.
 */
inline double phi(ProcessModel const& model, double alpha, double x)
{
    model.require_state(x);
    if (!(alpha > 0))
    {
        throw DomainError("phi: alpha must be positive");
    }
    if (model.kind() == ModelKind::AbsorbedBM)
    {
        return std::exp(-std::sqrt(2.0 * alpha) * x);
    }
    return 0.0;
}

//! E_x[exp(-zeta)].
inline double laplace_lifetime(ProcessModel const& model, double x)
{
    model.require_state(x);
    switch (model.kind())
    {
        case ModelKind::KilledStatic:
            return 1.0 / (1.0 + x * x);  // g / (1 + g) with g = x^-2
        case ModelKind::AbsorbedBM:
            return std::exp(-std::sqrt(2.0) * x);
        default:
            return 0.0;
    }
}

//! alpha R_alpha 1(x) = E_x[1 - exp(-alpha zeta)].
inline double alpha_resolvent_one(ProcessModel const& model, double alpha, double x)
{
    model.require_state(x);
    switch (model.kind())
    {
        case ModelKind::KilledStatic:
            return alpha / (alpha + 1.0 / (x * x));
        case ModelKind::AbsorbedBM:
            return 1.0 - std::exp(-std::sqrt(2.0 * alpha) * x);
        default:
            return 1.0;
    }
}

struct AssumptionReport
{
    bool holds{false};
    double c_k{0};
};

//---------------------------------------------------------------------------//
/*!
 * Check sup_{x in K} E_x[exp(-zeta)] < 1 on a compact K inside the state
 * space. The Laplace transform of the lifetime is nonincreasing in x for
 * every model here, so the supremum sits at the left end of K.
 */
inline AssumptionReport assumption_check(ProcessModel const& model, Interval k)
{
    if (!(k.lo <= k.hi) || !model.in_state_space(k.lo) || !model.in_state_space(k.hi))
    {
        throw DomainError("assumption_check: K must be a compact subinterval of the "
                          "state space");
    }
    double const c = laplace_lifetime(model, k.lo);
    return {c < 1.0, c};
}

}  // namespace revuz
