//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/literals.hpp
//! JSON literals for measures and PCAFs.
//!
//! Measures: {"type":"density","expr":"sin_shift(4)"}, {"type":"dirac","x":0},
//! {"type":"cantor","n":3}, {"type":"cantor_limit"}. PCAFs accept the same plus
//! {"type":"local_time","x":0,"eps":0.03}.
//!
//! Density expressions: one, indicator(lo,hi), sin_shift(n[,lo,hi]),
//! damped_sin_shift(n[,lo,hi]), perturbed(n), spike(n), killed_base.
//!
//! Weightings: {"type":"m","window":[lo,hi]}, {"type":"kappa","window":[lo,hi]},
//! {"type":"nu0"[,"alpha":1,"t0":0.01]}, {"type":"point","x":0}.
//! Functionals: {"kind":"terminal","pcaf":P}, {"kind":"discounted_sq","pcaf":P},
//! {"kind":"sup_sq","a":P,"b":P}, {"kind":"discounted_diff_sq","a":P,"b":P},
//! the discounted kinds taking an optional "alpha" (default 1).
//---------------------------------------------------------------------------//
#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "error.hpp"
#include "json.hpp"
#include "estimators.hpp"
#include "measures.hpp"
#include "pcaf.hpp"

namespace revuz
{

namespace detail
{
inline std::string trim_copy(std::string const& s)
{
    auto const b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
    {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

struct Call
{
    std::string name;
    std::vector<double> args;
};

inline Call parse_call(std::string const& text)
{
    Call c;
    auto const open = text.find('(');
    if (open == std::string::npos)
    {
        c.name = trim_copy(text);
        return c;
    }
    if (text.back() != ')')
    {
        throw ConfigError("bad density expression '" + text + "'");
    }
    c.name = trim_copy(text.substr(0, open));
    std::string const inner = text.substr(open + 1, text.size() - open - 2);
    std::size_t pos = 0;
    while (pos <= inner.size() && !inner.empty())
    {
        auto const comma = inner.find(',', pos);
        auto const piece = trim_copy(inner.substr(pos, comma - pos));
        char* end = nullptr;
        double const v = std::strtod(piece.c_str(), &end);
        if (piece.empty() || end != piece.c_str() + piece.size())
        {
            throw ConfigError("bad argument '" + piece + "' in '" + text + "'");
        }
        c.args.push_back(v);
        if (comma == std::string::npos)
        {
            break;
        }
        pos = comma + 1;
    }
    return c;
}

inline int as_level(Call const& c)
{
    if (c.args.empty() || c.args[0] < 1 || c.args[0] != static_cast<int>(c.args[0]))
    {
        throw ConfigError(c.name + " needs a positive integer n");
    }
    return static_cast<int>(c.args[0]);
}

inline Interval support_from(Call const& c, std::size_t first, Interval fallback)
{
    if (c.args.size() == first)
    {
        return fallback;
    }
    if (c.args.size() != first + 2)
    {
        throw ConfigError(c.name + ": expected a support lo,hi");
    }
    return {c.args[first], c.args[first + 1]};
}
}  // namespace detail

inline SmoothMeasure density_from_expr(std::string const& expr)
{
    auto const c = detail::parse_call(expr);
    Interval const line{-inf, inf};
    if (c.name == "one")
        return indicator(detail::support_from(c, 0, line));
    if (c.name == "indicator")
        return indicator(detail::support_from(c, 0, {0.0, 1.0}));
    if (c.name == "sin_shift")
        return sin_shift(detail::as_level(c), detail::support_from(c, 1, line));
    if (c.name == "damped_sin_shift")
        return damped_sin_shift(detail::as_level(c), detail::support_from(c, 1, line));
    if (c.name == "perturbed")
        return perturbed(detail::as_level(c));
    if (c.name == "spike")
        return spike(detail::as_level(c));
    if (c.name == "killed_base")
        return killed_base();
    throw ConfigError("unknown density '" + c.name + "'");
}

inline SmoothMeasure measure_from_json(nlohmann::json const& j)
{
    try
    {
        auto const type = j.at("type").get<std::string>();
        if (type == "density")
            return density_from_expr(j.at("expr").get<std::string>());
        if (type == "dirac")
            return dirac(j.at("x").get<double>());
        if (type == "cantor")
            return cantor_level(j.at("n").get<int>());
        if (type == "cantor_limit")
            return cantor_limit();
        throw ConfigError("unknown measure type '" + type + "'");
    }
    catch (nlohmann::json::exception const& e)
    {
        throw ConfigError(std::string("measure literal: ") + e.what());
    }
}

inline SmoothMeasure measure_from_literal(std::string const& text)
{
    try
    {
        return measure_from_json(nlohmann::json::parse(text));
    }
    catch (nlohmann::json::exception const& e)
    {
        throw ConfigError(std::string("measure literal: ") + e.what());
    }
}

inline PcafSpec pcaf_from_json(nlohmann::json const& j)
{
    try
    {
        auto const type = j.at("type").get<std::string>();
        if (type == "local_time")
            return LocalTime{j.at("x").get<double>(), j.at("eps").get<double>()};
        if (type == "cantor")
            return CantorPcaf{j.at("n").get<int>()};
        if (type == "density")
            return PcafSpec::from_density(density_from_expr(j.at("expr").get<std::string>()));
        throw ConfigError("unknown PCAF type '" + type + "'");
    }
    catch (nlohmann::json::exception const& e)
    {
        throw ConfigError(std::string("PCAF literal: ") + e.what());
    }
}

inline PcafSpec pcaf_from_literal(std::string const& text)
{
    try
    {
        return pcaf_from_json(nlohmann::json::parse(text));
    }
    catch (nlohmann::json::exception const& e)
    {
        throw ConfigError(std::string("PCAF literal: ") + e.what());
    }
}

namespace detail
{
template<class F>
auto guarded(char const* what, F&& f)
{
    try
    {
        return f();
    }
    catch (nlohmann::json::exception const& e)
    {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

inline Interval window_from_json(nlohmann::json const& j)
{
    auto const w = j.at("window").get<std::vector<double>>();
    if (w.size() != 2)
    {
        throw ConfigError("window must be [lo, hi]");
    }
    return {w[0], w[1]};
}
}  // namespace detail

inline Weighting weighting_from_literal(std::string const& text)
{
    return detail::guarded("weighting literal", [&]() -> Weighting {
        auto const j = nlohmann::json::parse(text);
        auto const type = j.at("type").get<std::string>();
        if (type == "m")
            return MWindow{detail::window_from_json(j)};
        if (type == "kappa")
            return Kappa{detail::window_from_json(j)};
        if (type == "nu0")
            return Nu0{j.value("alpha", 1.0), j.value("t0", 0.01)};
        if (type == "point")
            return PointMass{j.at("x").get<double>()};
        throw ConfigError("unknown weighting type '" + type + "'");
    });
}

struct NamedFunctional
{
    std::string name;
    PathFunctional f;
    //! Horizon required by the functional (sup kinds), if any.
    std::optional<double> horizon;
};

/*!
 * Parse a functional literal. Sup kinds use `horizon` as T.
 */
inline NamedFunctional functional_from_literal(std::string const& text, double horizon)
{
    return detail::guarded("functional literal", [&]() -> NamedFunctional {
        auto const j = nlohmann::json::parse(text);
        auto const kind = j.at("kind").get<std::string>();
        double const alpha = j.value("alpha", 1.0);
        std::string const name = j.value("name", kind);
        if (kind == "terminal")
            return {name, terminal_functional(pcaf_from_json(j.at("pcaf"))), std::nullopt};
        if (kind == "discounted_sq")
            return {name, squared_discounted_functional(pcaf_from_json(j.at("pcaf")), alpha),
                    std::nullopt};
        if (kind == "sup_sq")
            return {name,
                    sup_squared_functional(pcaf_from_json(j.at("a")), pcaf_from_json(j.at("b")),
                                           horizon),
                    horizon};
        if (kind == "discounted_diff_sq")
            return {name,
                    discounted_squared_functional(pcaf_from_json(j.at("a")),
                                                  pcaf_from_json(j.at("b")), alpha),
                    std::nullopt};
        throw ConfigError("unknown functional kind '" + kind + "'");
    });
}

}  // namespace revuz
