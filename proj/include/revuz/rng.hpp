//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/rng.hpp
//! Counter-based random streams (Philox4x32-10) and the variates built on
//! them.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace revuz
{

//---------------------------------------------------------------------------//
/*!
 * Philox4x32 with 10 rounds (Salmon et al., SC'11).
 *
 * The block function is a pure map (counter, key) -> 128 random bits.
 */
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t m0 = 0xD2511F53u;
    static constexpr std::uint32_t m1 = 0xCD9E8D57u;
    static constexpr std::uint32_t w0 = 0x9E3779B9u;
    static constexpr std::uint32_t w1 = 0xBB67AE85u;

    static constexpr Counter round(Counter c, Key k) noexcept
    {
        std::uint64_t const p0 = std::uint64_t{m0} * c[0];
        std::uint64_t const p1 = std::uint64_t{m1} * c[2];
        auto const hi0 = static_cast<std::uint32_t>(p0 >> 32);
        auto const lo0 = static_cast<std::uint32_t>(p0);
        auto const hi1 = static_cast<std::uint32_t>(p1 >> 32);
        auto const lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }

    static constexpr Counter block(Counter c, Key k) noexcept
    {
        for (int r = 0; r < 10; ++r)
        {
            if (r > 0)
            {
                k[0] += w0;
                k[1] += w1;
            }
            c = round(c, k);
        }
        return c;
    }
};

//---------------------------------------------------------------------------//
/*!
 * Random stream fully determined by (seed, stream index).
 *
 * The seed is the Philox key; the stream index occupies the upper half of
 * the counter and the draw number the lower half, so distinct stream
 * indices never share a block. Satisfies UniformRandomBitGenerator.
 */
class RandomStream
{
  public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)}
        , stream_(stream)
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept
    {
        if (avail_ == 0)
        {
            refill();
        }
        --avail_;
        return words_[avail_];
    }

    //! Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() noexcept
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate) noexcept
    {
        return -std::log(uniform()) / rate;
    }

    double normal() noexcept;

    std::uint64_t stream() const noexcept { return stream_; }

  private:
    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t block_{0};
    std::array<std::uint64_t, 2> words_{};
    int avail_{0};

    void refill() noexcept
    {
        Philox4x32::Counter const ctr{static_cast<std::uint32_t>(block_),
                                      static_cast<std::uint32_t>(block_ >> 32),
                                      static_cast<std::uint32_t>(stream_),
                                      static_cast<std::uint32_t>(stream_ >> 32)};
        auto const out = Philox4x32::block(ctr, key_);
        ++block_;
        words_[1] = (std::uint64_t{out[1]} << 32) | out[0];
        words_[0] = (std::uint64_t{out[3]} << 32) | out[2];
        avail_ = 2;
    }
};

//! Stream for one path: same (seed, pathIndex) always replays the same draws.
inline RandomStream rng_for(std::uint64_t seed, std::uint64_t path_index) noexcept
{
    return RandomStream{seed, path_index};
}

namespace detail
{
//---------------------------------------------------------------------------//
// 256-layer ziggurat for the standard normal (Marsaglia & Tsang layout with
// Doornik's rectangle-edge test).
struct ZigguratTables
{
    static constexpr int layers = 256;
    static constexpr double r = 3.6541528853610088;
    static constexpr double v = 0.00492867323399;

    std::array<double, layers + 1> x{};
    std::array<double, layers> ratio{};

    ZigguratTables() noexcept
    {
        auto f = [](double t) { return std::exp(-0.5 * t * t); };
        x[0] = v / f(r);
        x[1] = r;
        for (int i = 2; i < layers; ++i)
        {
            x[i] = std::sqrt(-2.0 * std::log(v / x[i - 1] + f(x[i - 1])));
        }
        x[layers] = 0.0;
        for (int i = 0; i < layers; ++i)
        {
            ratio[i] = x[i + 1] / x[i];
        }
    }
};

inline ZigguratTables const& ziggurat() noexcept
{
    static ZigguratTables const tables;
    return tables;
}
}  // namespace detail

inline double RandomStream::normal() noexcept
{
    auto const& z = detail::ziggurat();
    for (;;)
    {
        std::uint64_t const bits = (*this)();
        int const i = static_cast<int>(bits & 0xFF);
        double const u = 2.0 * ((static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53) - 1.0;
        if (std::fabs(u) < z.ratio[i])
        {
            return u * z.x[i];
        }
        if (i == 0)
        {
            // tail beyond r
            double xt;
            double yt;
            do
            {
                xt = -std::log(uniform()) / z.r;
                yt = -std::log(uniform());
            } while (yt + yt < xt * xt);
            return u < 0 ? -(z.r + xt) : z.r + xt;
        }
        double const xs = u * z.x[i];
        double const f0 = std::exp(-0.5 * (z.x[i] * z.x[i] - xs * xs));
        double const f1 = std::exp(-0.5 * (z.x[i + 1] * z.x[i + 1] - xs * xs));
        if (f1 + uniform() * (f0 - f1) < 1.0)
        {
            return xs;
        }
    }
}

}  // namespace revuz
