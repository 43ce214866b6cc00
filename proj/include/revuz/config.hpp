//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/config.hpp
//! key = value settings for the harness.
//---------------------------------------------------------------------------//
#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "harness.hpp"

namespace revuz
{

namespace detail
{
inline std::string trim(std::string_view s)
{
    auto const b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
    {
        return {};
    }
    auto const e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template<class T>
T parse_number(std::string const& key, std::string const& text)
{
    T v{};
    auto const* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end)
    {
        throw ConfigError("bad value for " + key + ": '" + text + "'");
    }
    return v;
}

// g++ 11 has no floating from_chars for every target; strtod is enough here
template<>
inline double parse_number<double>(std::string const& key, std::string const& text)
{
    char* end = nullptr;
    double const v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
    {
        throw ConfigError("bad value for " + key + ": '" + text + "'");
    }
    return v;
}
}  // namespace detail

//! Apply one setting; unknown keys are errors.
inline void apply_setting(HarnessConfig& cfg, std::string const& key, std::string const& value)
{
    using detail::parse_number;
    if (key == "seed")
        cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "paths")
        cfg.paths = parse_number<std::size_t>(key, value);
    else if (key == "dt")
        cfg.dt = parse_number<double>(key, value);
    else if (key == "workers")
        cfg.workers = parse_number<unsigned>(key, value);
    else if (key == "horizon_sup")
        cfg.horizon_sup = parse_number<double>(key, value);
    else if (key == "horizon_disc")
        cfg.horizon_disc = parse_number<double>(key, value);
    else if (key == "quad_tol")
        cfg.quad_tol = parse_number<double>(key, value);
    else if (key == "eps")
        cfg.eps = parse_number<double>(key, value);
    else if (key == "ladder")
    {
        std::vector<int> ladder;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            ladder.push_back(parse_number<int>(key, detail::trim(item)));
        }
        if (ladder.empty())
        {
            throw ConfigError("ladder must not be empty");
        }
        cfg.ladder = std::move(ladder);
    }
    else
        throw ConfigError("unknown setting '" + key + "'");
}

/*!
 * Read `key = value` lines; blank lines and lines starting with '#' are
 * skipped.
 */
inline void apply_config(HarnessConfig& cfg, std::istream& in)
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        auto const text = detail::trim(line);
        if (text.empty() || text.front() == '#')
        {
            continue;
        }
        auto const eq = text.find('=');
        if (eq == std::string::npos)
        {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        apply_setting(cfg, detail::trim(text.substr(0, eq)), detail::trim(text.substr(eq + 1)));
    }
}

inline void apply_config_file(HarnessConfig& cfg, std::string const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot open config file " + path);
    }
    apply_config(cfg, in);
}

}  // namespace revuz
