//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/error.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace revuz
{

//! Argument outside the state space or an invalid model/weighting pairing.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! Operation not defined for this model or measure type.
class UnsupportedError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

//! Bad experiment or window configuration.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Numerical failure; carries the best estimate and its error bound.
class NumericError : public std::runtime_error
{
  public:
    NumericError(std::string const& what, double estimate, double error)
        : std::runtime_error(what + " (estimate " + std::to_string(estimate)
                             + ", error " + std::to_string(error) + ")")
        , estimate_(estimate)
        , error_(error)
    {
    }

    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

  private:
    double estimate_;
    double error_;
};

}  // namespace revuz
