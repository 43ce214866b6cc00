//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_measures.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "revuz/measures.hpp"
#include "revuz/reduce.hpp"

using namespace revuz;

TEST_CASE("integrate: point, Cantor level and Cantor limit", "[measures]")
{
    auto sq1 = [](double x) { return x * x + 1.0; };
    CHECK(integrate(dirac(0.0), sq1, {-1.0, 1.0}, 1e-12) == 1.0);
    CHECK(integrate(dirac(2.0), sq1, {-1.0, 1.0}, 1e-12) == 0.0);

    auto id = [](double x) { return x; };
    CHECK(integrate(cantor_level(1), id, {0.0, 1.0}, 1e-12) == Catch::Approx(0.5).margin(1e-14));
    CHECK(integrate(cantor_limit(), [](double) { return 1.0; }, {0.0, 1.0}, 1e-12)
          == Catch::Approx(1.0).margin(1e-12));
    // the Cantor distribution has variance 1/8
    CHECK(integrate(cantor_limit(), [](double x) { return x * x; }, {0.0, 1.0}, 1e-10)
          == Catch::Approx(3.0 / 8.0).margin(1e-9));
    // mass of C_2 restricted to [0, 1/2]: the two left intervals
    CHECK(integrate(cantor_level(2), [](double) { return 1.0; }, {0.0, 0.5}, 1e-12)
          == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("integrate: densities", "[measures]")
{
    auto const one = [](double) { return 1.0; };
    CHECK(integrate(indicator({0.0, 1.0}), one, {-5.0, 5.0}, 1e-12)
          == Catch::Approx(1.0).margin(1e-13));
    CHECK(integrate(indicator({0.0, 1.0}), one, {0.25, 5.0}, 1e-12)
          == Catch::Approx(0.75).margin(1e-13));
    // int_0^1 (1 + sin 4x) dx
    CHECK(integrate(sin_shift(4, {0.0, 1.0}), one, {0.0, 1.0}, 1e-12)
          == Catch::Approx(1.0 + (1.0 - std::cos(4.0)) / 4.0).margin(1e-12));
    CHECK(total_mass(spike(16)) == Catch::Approx(std::sqrt(16.0)).margin(1e-10));
    CHECK_THROWS_AS(integrate(indicator({-inf, inf}), one, {-inf, inf}, 1e-10), UnsupportedError);
}

TEST_CASE("weighted sums and the zero measure", "[measures]")
{
    auto const one = [](double) { return 1.0; };
    auto const mix = weighted_sum({{2.0, dirac(0.5)}, {3.0, indicator({0.0, 1.0})}});
    CHECK(integrate(mix, one, {0.0, 1.0}, 1e-12) == Catch::Approx(5.0).margin(1e-12));
    CHECK(zero_measure().is_zero());
    CHECK_FALSE(support_hull(zero_measure()).has_value());
    CHECK(total_mass(zero_measure()) == 0.0);
    CHECK_THROWS_AS(weighted_sum({{-1.0, dirac(0.0)}}), DomainError);
}

TEST_CASE("cantor membership", "[measures]")
{
    CHECK(cantor_membership(1.0 / 3.0, 5));
    CHECK_FALSE(cantor_membership(0.5, 1));
    CHECK(cantor_membership(0.0, 20));
    CHECK(cantor_membership(1.0, 20));
    CHECK_FALSE(cantor_membership(-0.1, 0));

    auto brute = [](double x, int n) {
        for (auto iv : cantor_intervals(n))
        {
            if (iv.contains(x))
            {
                return true;
            }
        }
        return false;
    };
    CHECK(cantor_membership(0.7, 3) == brute(0.7, 3));
    for (int i = 1; i < 2000; ++i)
    {
        double const x = (i + 0.37) / 2001.0;
        for (int n : {1, 2, 3, 5})
        {
            REQUIRE(cantor_membership(x, n) == brute(x, n));
        }
    }
    CHECK(cantor_intervals(3).size() == 8);
    CHECK(cantor_set_length(2) == Catch::Approx(4.0 / 9.0));
}

TEST_CASE("sampling", "[measures]")
{
    auto rng = rng_for(1, 0);
    CHECK(sample(dirac(2.0), rng) == 2.0);

    MeasureSampler const c1{cantor_level(1)};
    for (int i = 0; i < 1000; ++i)
    {
        double const x = c1(rng);
        REQUIRE(((x >= 0.0 && x <= 1.0 / 3.0) || (x >= 2.0 / 3.0 && x <= 1.0)));
    }

    MeasureSampler const u{indicator({0.0, 1.0})};
    std::vector<double> xs(100000);
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        auto r = rng_for(2, i);
        xs[i] = u(r);
    }
    auto const me = mean_and_error(xs);
    CHECK(std::fabs(me.mean - 0.5) < 3.0 * me.std_error);
}

TEST_CASE("support hull and kinks", "[measures]")
{
    auto const h = support_hull(weighted_sum({{1.0, dirac(-1.0)}, {1.0, indicator({0.0, 2.0})}}));
    REQUIRE(h);
    CHECK(h->lo == -1.0);
    CHECK(h->hi == 2.0);
    auto const k = kink_points(killed_base());
    CHECK(std::find(k.begin(), k.end(), 0.0) != k.end());
}
