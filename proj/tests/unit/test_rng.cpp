//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_rng.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "revuz/reduce.hpp"
#include "revuz/rng.hpp"

using namespace revuz;

TEST_CASE("philox known answers", "[rng]")
{
    using P = Philox4x32;
    CHECK(P::block({0, 0, 0, 0}, {0, 0})
          == P::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(P::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                   {0xffffffffu, 0xffffffffu})
          == P::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(P::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                   {0xa4093822u, 0x299f31d0u})
          == P::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("same seed and index replay", "[rng]")
{
    auto a = rng_for(7, 0);
    auto b = rng_for(7, 0);
    for (int i = 0; i < 100; ++i)
    {
        REQUIRE(a() == b());
    }
    auto c = rng_for(7, 0);
    auto d = rng_for(7, 1);
    CHECK(c() != d());
}

TEST_CASE("neighbouring streams are uncorrelated", "[rng]")
{
    constexpr int n = 10000;
    std::vector<double> u(n + 1);
    for (int i = 0; i <= n; ++i)
    {
        u[i] = rng_for(7, i).uniform();
    }
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < n; ++i)
    {
        sx += u[i];
        sy += u[i + 1];
        sxx += u[i] * u[i];
        syy += u[i + 1] * u[i + 1];
        sxy += u[i] * u[i + 1];
    }
    double const cov = sxy / n - sx / n * sy / n;
    double const r = cov / std::sqrt((sxx / n - sx / n * sx / n) * (syy / n - sy / n * sy / n));
    CHECK(std::fabs(r) < 4.0 / std::sqrt(double(n)));
}

TEST_CASE("uniform stays in the open unit interval", "[rng]")
{
    auto rng = rng_for(1, 2);
    for (int i = 0; i < 100000; ++i)
    {
        double const u = rng.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("normal moments", "[rng]")
{
    constexpr int n = 400000;
    auto rng = rng_for(11, 0);
    std::vector<double> x(n);
    for (auto& v : x)
    {
        v = rng.normal();
    }
    auto const m1 = mean_and_error(x);
    CHECK(std::fabs(m1.mean) < 4.0 * m1.std_error);

    std::vector<double> sq(n), tail(n);
    for (int i = 0; i < n; ++i)
    {
        sq[i] = x[i] * x[i];
        tail[i] = std::fabs(x[i]) > 2.0 ? 1.0 : 0.0;
    }
    auto const m2 = mean_and_error(sq);
    CHECK(std::fabs(m2.mean - 1.0) < 4.0 * m2.std_error);
    // P(|Z| > 2) = erfc(sqrt 2)
    auto const pt = mean_and_error(tail);
    CHECK(std::fabs(pt.mean - std::erfc(std::sqrt(2.0))) < 4.0 * pt.std_error);
}

TEST_CASE("normal tail beyond the base layer is reached", "[rng]")
{
    auto rng = rng_for(3, 0);
    int beyond = 0;
    for (int i = 0; i < 2000000; ++i)
    {
        beyond += std::fabs(rng.normal()) > 3.6541528853610088 ? 1 : 0;
    }
    // expected 2e6 * erfc(3.654 / sqrt 2) ~ 516
    double const expect = 2e6 * std::erfc(3.6541528853610088 / std::sqrt(2.0));
    CHECK(std::fabs(beyond - expect) < 5.0 * std::sqrt(expect));
}

TEST_CASE("pairwise sum shape is fixed by length", "[reduce]")
{
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        v[i] = 1.0 / (1.0 + double(i));
    }
    double const a = pairwise_sum(v);
    double const b = pairwise_sum(v);
    CHECK(a == b);
    CHECK(a == Catch::Approx(7.4854708605503449127).epsilon(1e-14));
}

TEST_CASE("parallel_for fills slots independent of worker count", "[reduce]")
{
    for (unsigned w : {1u, 3u, 16u})
    {
        std::vector<double> out(1003);
        parallel_for(out.size(), w, [&](std::size_t i) { out[i] = rng_for(5, i).uniform(); });
        std::vector<double> ref(out.size());
        for (std::size_t i = 0; i < ref.size(); ++i)
        {
            ref[i] = rng_for(5, i).uniform();
        }
        CHECK(out == ref);
    }
}

TEST_CASE("parallel_for rethrows worker failures", "[reduce]")
{
    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [](std::size_t i) {
                                     if (i == 57)
                                     {
                                         throw std::runtime_error("boom");
                                     }
                                 }),
                    std::runtime_error);
}
