//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_estimators.cpp
//! Monte Carlo checks run at reduced path counts; the full-size versions
//! live in the acceptance binary.
//---------------------------------------------------------------------------//
#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "revuz/estimators.hpp"
#include "revuz/kernels.hpp"

using namespace revuz;

namespace
{
ProcessModel const free_bm{ModelKind::FreeBM};
ProcessModel const absorbed{ModelKind::AbsorbedBM};
ProcessModel const flip{ModelKind::FlipJump};
ProcessModel const killed{ModelKind::KilledStatic};

PcafSpec constant_pcaf(double c)
{
    return PcafSpec{DensityPcaf{[c](double) { return c; }, c, "const"}};
}

McConfig small(std::size_t paths, double horizon = 1.0)
{
    McConfig c;
    c.paths = paths;
    c.sim.horizon = horizon;
    c.workers = 2;
    return c;
}

bool within(McEstimate const& e, double target, double sigmas = 3.0, double allowance = 0.0)
{
    return std::fabs(e.mean - target) <= sigmas * e.std_error + allowance;
}

SmoothMeasure linear_density()
{
    return SmoothMeasure{Density{[](double x) { return 1.0 + x; }, {0.0, 1.0}, "1+x", {}, 2.0}};
}
}  // namespace

TEST_CASE("deterministic functional has zero standard error", "[estimators]")
{
    auto const e = expect(free_bm, PointMass{0.0}, terminal_functional(constant_pcaf(1.0)),
                          small(200, 2.0));
    CHECK(e.mean == Catch::Approx(2.0).margin(1e-12));
    CHECK(e.std_error == Catch::Approx(0.0).margin(1e-13));
    CHECK(e.n == 200);
    CHECK(e.seed == SimConfig{}.seed);
}

TEST_CASE("kappa weighting carries the killing mass", "[estimators]")
{
    PathFunctional one = [](Path const&) { return PathValue{1.0}; };
    auto const e = expect(killed, Kappa{{0.2, 0.9}}, one, small(100));
    CHECK(e.mean == Catch::Approx(3.8888888888888886387).epsilon(1e-14));
    CHECK(e.std_error == 0.0);
    CHECK_THROWS_AS(expect(free_bm, Kappa{{0.2, 0.9}}, one, small(10)), DomainError);
    CHECK_THROWS_AS(expect(killed, Kappa{{0.0, 0.9}}, one, small(10)), DomainError);
    CHECK_THROWS_AS(expect(killed, MWindow{{0.0, 1.5}}, one, small(10)), DomainError);
    CHECK_THROWS_AS(expect(free_bm, Nu0{}, one, small(10)), DomainError);
}

TEST_CASE("window weighting multiplies by the window length", "[estimators]")
{
    PathFunctional start = [](Path const& p) { return PathValue{p.start()}; };
    auto const e = expect(free_bm, MWindow{{2.0, 6.0}}, start, small(20000, 0.01));
    // 4 * mean of U(2, 6)
    CHECK(within(e, 16.0));
}

TEST_CASE("flip process closed form", "[estimators]")
{
    double const k = 1;
    auto const spec = PcafSpec{DensityPcaf{[k](double y) { return 1.0 + std::sin(k * y); }, 2.0, ""}};
    auto const e = expect(flip, PointMass{0.5}, terminal_functional(spec), small(20000));
    CHECK(within(e, 1.2072711737731687975));
}

TEST_CASE("distance between identical functionals is exactly zero", "[estimators]")
{
    auto const spec = PcafSpec::from_density(indicator({0.0, 1.0}));
    auto const lt = PcafSpec{LocalTime{0.3, 0.05}};
    for (auto m : {free_bm, absorbed, flip, killed})
    {
        auto const space = m.state_space();
        Interval const w{std::max(space.lo, 0.1), std::min(space.hi, 0.9)};
        for (Weighting const& wt : {Weighting{MWindow{w}}, Weighting{PointMass{0.5}}})
        {
            auto const d = sup_l2_distance(m, spec, spec, wt, 1.0, small(50));
            CHECK(d.mean == 0.0);
            CHECK(d.std_error == 0.0);
            auto const e = discounted_l2_distance(m, lt, lt, wt, small(50, 5.0));
            CHECK(e.mean == 0.0);
        }
    }
    auto const d = sup_l2_distance(killed, spec, spec, Kappa{{0.5, 0.9}}, 1.0, small(50));
    CHECK(d.mean == 0.0);
    auto const n = sup_l2_distance(absorbed, spec, spec, Nu0{}, 1.0, small(50));
    CHECK(n.mean == 0.0);
}

TEST_CASE("discounted distance of unit rate from zero", "[estimators]")
{
    auto const e = discounted_l2_distance(free_bm, constant_pcaf(1.0), constant_pcaf(0.0),
                                          PointMass{0.0}, small(20, 20.0));
    CHECK(e.mean == Catch::Approx(1.0).margin(1e-7));
    CHECK(e.tail_bound <= 3.0 * std::exp(-20.0));
}

TEST_CASE("sup distance on the static killed family", "[estimators]")
{
    // E_m for n = 4 on (0, 1), T = 1
    auto const e = sup_l2_distance(killed, PcafSpec::from_density(perturbed(4)),
                                   PcafSpec::from_density(killed_base()), MWindow{{0.0, 1.0}},
                                   1.0, small(40000));
    CHECK(within(e, 0.2769462258353712));
}

TEST_CASE("energy identity, static killed model", "[estimators]")
{
    auto const r = energy_identity_check(killed, 1.0, linear_density(), small(40000, 50.0));
    CHECK(r.window.lo == 0.0);
    CHECK(r.window.hi == 1.0);
    CHECK(r.exterior_bound == 0.0);
    CHECK(r.nu0_term == 0.0);
    CHECK(r.kappa_term == Catch::Approx(0.5 * 0.61217121359574096).margin(1e-10));
    CHECK(r.rhs == Catch::Approx(0.64018615277338802).margin(1e-10));
    CHECK(within(r.lhs_m, 0.33410054597551754));
    CHECK(std::fabs(r.z) <= 3.0);
}

TEST_CASE("energy identity, free Brownian motion", "[estimators]")
{
    EnergyIdentityOptions opt;
    opt.window = Interval{-8.0, 9.0};
    auto cfg = small(4000, 20.0);
    cfg.sim.dt = 1e-2;
    auto const r = energy_identity_check(free_bm, 1.0, indicator({0.0, 1.0}), cfg, opt);
    CHECK(r.rhs == Catch::Approx(0.4648027103518144).margin(1e-9));
    CHECK(r.exterior_bound < 1e-6);
    CHECK(std::fabs(r.z) <= 3.0);
}

TEST_CASE("automatic window meets the exterior tolerance", "[estimators]")
{
    double const b = detail::exterior_bound(free_bm, 1.0, 1.0, 5.0, 5.0);
    CHECK(b == Catch::Approx(2.0 * (1.0 / std::sqrt(2.0)) * 0.5 * std::exp(-10.0)));
    CHECK(detail::exterior_bound(killed, 1.0, 1.0, 0.1, 0.1) == 0.0);
    CHECK_THROWS_AS(energy_identity_check(free_bm, 1.0, indicator({-inf, inf}), small(10)),
                    ConfigError);
}

TEST_CASE("absorbed semigroup of an exponential", "[estimators]")
{
    // P_t phi at t -> 0 is phi; against a direct image-method quadrature
    double const c = 2.0;
    CHECK(detail::absorbed_semigroup_exp(c, 1e-12, 0.7) == Catch::Approx(std::exp(-1.4)).epsilon(1e-9));
    double const t = 0.3;
    double const x = 0.4;
    auto integrand = [&](double y) {
        double const s = std::sqrt(2.0 * M_PI * t);
        double const p = (std::exp(-(x - y) * (x - y) / (2 * t)) - std::exp(-(x + y) * (x + y) / (2 * t))) / s;
        return p * std::exp(-c * y);
    };
    double const direct = integrate_adaptive(integrand, 0.0, 12.0, QuadOptions{1e-13}).value;
    CHECK(detail::absorbed_semigroup_exp(c, t, x) == Catch::Approx(direct).margin(1e-12));
}

TEST_CASE("entrance estimator against the analytic pairing", "[estimators]")
{
    auto const mu = indicator({1.0, 2.0});
    auto cfg = small(10000, 20.0);
    cfg.sim.dt = 1e-3;
    auto const fd = expect(absorbed, Nu0{}, squared_discounted_functional(PcafSpec::from_density(mu), 1.0), cfg);
    CHECK(within(fd, nu0_pairing(absorbed, 1.0, mu), 3.0, 0.1 * 0.05206918170987343));
}

TEST_CASE("Fukushima residual", "[estimators]")
{
    auto const zero = fukushima_residual(free_bm, 1.0, zero_measure(), 0.5, small(100));
    CHECK(zero.mean == Catch::Approx(0.0).margin(1e-15));

    auto const k = fukushima_residual(killed, 1.0, linear_density(), 0.5, small(20000));
    CHECK(within(k, 0.0));

    auto const f = fukushima_residual(free_bm, 1.0, indicator({0.0, 1.0}), 0.5, small(4000));
    CHECK(within(f, 0.0, 3.0, 1e-3));
}

TEST_CASE("hitting Laplace transform", "[estimators]")
{
    auto cfg = small(20000, 20.0);
    auto const same = hitting_laplace_check(1.0, 1.0, cfg);
    CHECK(same.mean == 1.0);
    auto const e1 = hitting_laplace_check(0.0, 1.0, cfg);
    CHECK(within(e1, std::exp(-std::sqrt(2.0)), 3.0, 0.005));
    auto const e3 = hitting_laplace_check(0.0, 3.0, cfg);
    CHECK(within(e3, std::exp(-3.0 * std::sqrt(2.0)), 3.0, 0.005));
}

TEST_CASE("reruns are bitwise identical across worker counts", "[estimators]")
{
    auto const spec = PcafSpec::from_density(indicator({0.0, 1.0}));
    auto f = squared_discounted_functional(spec, 1.0);
    auto cfg = small(3001, 2.0);
    std::vector<McEstimate> runs;
    for (unsigned w : {1u, 4u, 16u})
    {
        cfg.workers = w;
        runs.push_back(expect(free_bm, MWindow{{-1.0, 2.0}}, f, cfg));
    }
    for (auto const& r : runs)
    {
        CHECK(r.mean == runs.front().mean);
        CHECK(r.std_error == runs.front().std_error);
    }
}

TEST_CASE("nonfinite samples abort the estimate", "[estimators]")
{
    PathFunctional bad = [](Path const&) { return PathValue{std::nan("")}; };
    CHECK_THROWS_AS(expect(free_bm, PointMass{0.0}, bad, small(10)), NumericError);
}

TEST_CASE("vague probe", "[estimators]")
{
    auto const id = [](double x) { return x; };
    auto const c = vague_probe({indicator({0.0, 1.0}), indicator({0.0, 1.0})}, {id}, {0.0, 1.0});
    CHECK(c.values[0][0] == c.values[1][0]);

    auto const cantor = vague_probe({cantor_level(1), cantor_level(3), cantor_level(6)}, {id},
                                    {0.0, 1.0});
    for (auto const& row : cantor.values)
    {
        CHECK(row[0] == Catch::Approx(0.5).margin(1e-12));
    }

    auto tent = [](double y) { return std::max(0.0, 1.0 - std::fabs(y - 1.0)); };
    auto const rl = vague_probe({sin_shift(4, {-inf, inf}), sin_shift(16, {-inf, inf}),
                                 sin_shift(64, {-inf, inf})},
                                {tent}, {0.0, 2.0}, indicator({-inf, inf}));
    // int tent sin(n x) dx = 2 sin(n) (1 - cos n) / n^2
    for (auto [i, n] : {std::pair{0, 4.0}, {1, 16.0}, {2, 64.0}})
    {
        double const exact = 2.0 * std::sin(n) * (1.0 - std::cos(n)) / (n * n);
        CHECK(rl.values[i][0] - 1.0 == Catch::Approx(exact).margin(1e-9));
    }
    CHECK(rl.tau[0] < 0);
}
