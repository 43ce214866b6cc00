//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_pcaf.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "revuz/pcaf.hpp"
#include "revuz/reduce.hpp"

using namespace revuz;

namespace
{
PcafSpec const unit_rate{DensityPcaf{[](double) { return 1.0; }, 1.0, "one"}};

Path straight(std::vector<double> times, std::vector<double> states, bool event = false)
{
    Path p;
    p.times = std::move(times);
    p.states = std::move(states);
    p.piecewise_constant = event;
    return p;
}
}  // namespace

TEST_CASE("unit rate gives A_t = t", "[pcaf]")
{
    SimConfig cfg;
    cfg.horizon = 2.0;
    for (auto kind : {ModelKind::FreeBM, ModelKind::FlipJump})
    {
        auto rng = rng_for(4, 0);
        auto const p = simulate_path(ProcessModel{kind}, 0.5, cfg, rng);
        auto const tr = evaluate(unit_rate, p, 0.0);
        for (std::size_t i = 0; i < tr.times.size(); ++i)
        {
            REQUIRE(tr.values[i] == Catch::Approx(tr.times[i]).margin(1e-12));
        }
        CHECK(terminal_value(unit_rate, p) == Catch::Approx(2.0).margin(1e-12));
    }
}

TEST_CASE("killed static path integrates up to the lifetime", "[pcaf]")
{
    SimConfig cfg;
    cfg.horizon = 50.0;
    for (std::uint64_t i = 0; i < 20; ++i)
    {
        auto rng = rng_for(5, i);
        auto const p = simulate_path(ProcessModel{ModelKind::KilledStatic}, 0.5, cfg, rng);
        REQUIRE(p.killed());
        auto const d = discounted_total(unit_rate, p, 1.0);
        REQUIRE(d.value == Catch::Approx(1.0 - std::exp(-p.zeta)).epsilon(1e-13));
        REQUIRE(d.tail_bound == 0.0);
    }
}

TEST_CASE("absorbed path stops accumulating at the lifetime", "[pcaf]")
{
    auto p = straight({0.0, 0.5, 1.0, 1.5}, {0.2, 0.1, cemetery, cemetery});
    p.model = ModelKind::AbsorbedBM;
    p.zeta = 0.75;
    p.exit = ExitKind::ContinuousExit;
    CHECK(terminal_value(unit_rate, p) == Catch::Approx(0.75));
    CHECK(discounted_total(unit_rate, p, 1.0).tail_bound == 0.0);
}

TEST_CASE("discounted total on a long free path", "[pcaf]")
{
    SimConfig cfg;
    cfg.horizon = 20.0;
    auto rng = rng_for(6, 0);
    auto const p = simulate_path(ProcessModel{ModelKind::FreeBM}, 0.0, cfg, rng);
    auto const d = discounted_total(unit_rate, p, 1.0);
    // trapezoid error of int_0^T e^{-s} ds is about dt^2 / 12
    CHECK(d.value == Catch::Approx(1.0 - std::exp(-20.0)).margin(1e-7));
    CHECK(d.tail_bound <= std::exp(-20.0) * (1 + 1e-12));

    auto const tr = evaluate(unit_rate, p, 1.0);
    CHECK(discounted_total(tr).value == d.value);
    CHECK(discounted_total(tr, 1e-12).flagged);
    CHECK_FALSE(discounted_total(tr, 1e-6).flagged);
    CHECK_THROWS_AS(discounted_total(evaluate(unit_rate, p, 0.0)), DomainError);
}

TEST_CASE("local time tail bound uses the box height", "[pcaf]")
{
    PcafSpec const lt{LocalTime{0.0, 0.05}};
    CHECK(lt.sup_rate() == Catch::Approx(10.0));
    SimConfig cfg;
    cfg.horizon = 5.0;
    auto rng = rng_for(7, 0);
    auto const p = simulate_path(ProcessModel{ModelKind::FreeBM}, 0.0, cfg, rng);
    CHECK(discounted_total(lt, p, 1.0).tail_bound == Catch::Approx(10.0 * std::exp(-5.0)));
    CHECK_THROWS_AS(PcafSpec(LocalTime{0.0, 0.0}), DomainError);
}

TEST_CASE("sup distance", "[pcaf]")
{
    SimConfig cfg;
    auto rng = rng_for(8, 0);
    auto const p = simulate_path(ProcessModel{ModelKind::FreeBM}, 0.0, cfg, rng);
    auto const a = evaluate(unit_rate, p, 0.0);
    CHECK(sup_distance(a, a, 1.0) == 0.0);

    PcafTrajectory t1;
    PcafTrajectory t2;
    for (int i = 0; i <= 30; ++i)
    {
        double const t = 0.1 * i;
        t1.times.push_back(t);
        t1.values.push_back(t);
        t2.times.push_back(t);
        t2.values.push_back(2 * t);
    }
    CHECK(sup_distance(t1, t2, 3.0) == Catch::Approx(3.0));
    CHECK(sup_distance(t1, t2, 1.05) == Catch::Approx(1.0));
}

TEST_CASE("sup distance on a coarse grid against a ten times finer one", "[pcaf]")
{
    // two monotone trajectories with random increments
    auto rng = rng_for(9, 0);
    PcafTrajectory fine_a;
    PcafTrajectory fine_b;
    double a = 0;
    double b = 0;
    double modulus = 0;
    for (int i = 0; i <= 1000; ++i)
    {
        fine_a.times.push_back(i * 1e-3);
        fine_b.times.push_back(i * 1e-3);
        double const da = rng.uniform() * 2e-3;
        double const db = rng.uniform() * 2e-3;
        a += da;
        b += db;
        modulus = std::max(modulus, std::max(da, db));
        fine_a.values.push_back(a);
        fine_b.values.push_back(b);
    }
    PcafTrajectory coarse_a;
    PcafTrajectory coarse_b;
    for (std::size_t i = 0; i < fine_a.times.size(); i += 10)
    {
        coarse_a.times.push_back(fine_a.times[i]);
        coarse_a.values.push_back(fine_a.values[i]);
        coarse_b.times.push_back(fine_b.times[i]);
        coarse_b.values.push_back(fine_b.values[i]);
    }
    double const dense = sup_distance(fine_a, fine_b, 1.0);
    double const coarse = sup_distance(coarse_a, coarse_b, 1.0);
    CHECK(coarse <= dense);
    CHECK(dense - coarse <= 10.0 * modulus);
    // mixed grids go through the union grid
    CHECK(sup_distance(coarse_a, fine_b, 1.0) >= 0.0);
}

TEST_CASE("same path, different specs", "[pcaf]")
{
    SimConfig cfg;
    auto rng = rng_for(10, 0);
    auto const p = simulate_path(ProcessModel{ModelKind::FreeBM}, 0.0, cfg, rng);
    PcafSpec const twice{DensityPcaf{[](double) { return 2.0; }, 2.0, "two"}};
    CHECK(sup_distance(unit_rate, twice, p, 1.0) == Catch::Approx(1.0).margin(1e-12));
    CHECK(sup_distance(unit_rate, unit_rate, p, 1.0) == 0.0);
}

TEST_CASE("flip process mean of A_t", "[pcaf]")
{
    // E_x A_t = t + sin(n x) e^{-t} sinh t
    SimConfig cfg;
    cfg.horizon = 1.0;
    double const k = 3;
    PcafSpec const spec{DensityPcaf{[k](double y) { return 1.0 + std::sin(k * y); }, 2.0, ""}};
    std::vector<double> v(100000);
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        auto rng = rng_for(11, i);
        v[i] = terminal_value(spec, simulate_path(ProcessModel{ModelKind::FlipJump}, 0.5, cfg, rng));
    }
    auto const me = mean_and_error(v);
    CHECK(std::fabs(me.mean - 1.4312493600324467708) <= 3 * me.std_error);
}

TEST_CASE("Cantor PCAF rate and Revuz measure", "[pcaf]")
{
    PcafSpec const c{CantorPcaf{2}};
    CHECK(c.rate(0.1) == Catch::Approx(2.25));
    CHECK(c.rate(0.5) == 0.0);
    CHECK(c.rate(cemetery) == 0.0);
    CHECK(c.revuz_measure().as<CantorLevel>()->n == 2);
    CHECK_THROWS_AS(PcafSpec::from_density(dirac(0.0)), UnsupportedError);
    auto const d = PcafSpec::from_density(indicator({0.0, 1.0}));
    CHECK(d.rate(0.5) == 1.0);
    CHECK(d.rate(1.5) == 0.0);
}
