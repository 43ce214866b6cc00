//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/harness.hpp
//! Scripted experiments on the four model processes.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "estimators.hpp"
#include "kernels.hpp"
#include "measures.hpp"
#include "models.hpp"
#include "pcaf.hpp"
#include "report.hpp"

namespace revuz
{

struct HarnessConfig
{
    std::uint64_t seed{20240607};
    std::size_t paths{100000};
    double dt{1e-3};
    unsigned workers{default_workers()};
    //! n-ladder of the counterexample experiments
    std::vector<int> ladder{1, 2, 4, 8, 16, 32, 64};
    double horizon_sup{1.0};
    double horizon_disc{20.0};
    double quad_tol{1e-9};
    //! local-time bandwidth; sqrt(dt) when unset
    std::optional<double> eps;

    double bandwidth() const { return eps ? *eps : std::sqrt(dt); }

    //! MC settings for one block of an experiment. Blocks draw disjoint
    //! path indices; columns inside a block share paths.
    McConfig mc(double horizon, std::uint64_t block) const
    {
        McConfig c;
        c.sim.dt = dt;
        c.sim.horizon = horizon;
        c.sim.seed = seed;
        c.paths = paths;
        c.workers = workers;
        c.first_path = block * 1'000'000'000ull;
        return c;
    }
};

namespace detail
{
inline void describe(ExperimentReport& r, HarnessConfig const& cfg)
{
    r.seed = cfg.seed;
    std::string ladder;
    for (int n : cfg.ladder)
    {
        ladder += (ladder.empty() ? "" : ",") + std::to_string(n);
    }
    r.parameters = {{"seed", std::to_string(cfg.seed)},
                    {"paths", std::to_string(cfg.paths)},
                    {"dt", fmt(cfg.dt)},
                    {"ladder", ladder},
                    {"horizon_sup", fmt(cfg.horizon_sup)},
                    {"horizon_disc", fmt(cfg.horizon_disc)},
                    {"quad_tol", fmt(cfg.quad_tol)},
                    {"eps", fmt(cfg.bandwidth())}};
}

inline Cell quad_cell(std::string column, double value, double tol)
{
    return {std::move(column), value, tol, CellKind::Quadrature, 0};
}

inline Cell closed_cell(std::string column, double value)
{
    return {std::move(column), value, 0.0, CellKind::ClosedForm, 0};
}

//! E[(T ^ zeta)^2] for zeta ~ Exp(g).
inline double capped_lifetime_second_moment(double g, double horizon)
{
    double const e = std::exp(-g * horizon);
    return 2.0 / (g * g) * (1.0 - e) - 2.0 * horizon / g * e;
}

/*!
 * int_W w(x) (f_n - f)^2(x) E_x[(T ^ zeta)^2] dx for the perturbed family on
 * the static killed model, with f_n - f = (1 + g) n^{-1/2} sin(n x).
 */
inline double static_sup_distance(int n, double horizon, Interval window, bool kappa_weight,
                                  double tol)
{
    double const k = n;
    auto integrand = [&](double x) {
        double const g = 1.0 / (x * x);
        double const d = (1.0 + g) * std::sin(k * x);
        double const v = d * d / k * capped_lifetime_second_moment(g, horizon);
        return kappa_weight ? g * v : v;
    };
    std::vector<double> cuts;
    for (int i = 1; i < 4 * n; ++i)
    {
        cuts.push_back(static_cast<double>(i) / (4.0 * n));
    }
    QuadOptions q;
    q.abs_tol = tol;
    q.max_panels = 20000;
    return integrate_adaptive(integrand, window.lo, window.hi, q, cuts).value;
}

inline PcafSpec zero_pcaf()
{
    return PcafSpec{DensityPcaf{[](double) { return 0.0; }, 0.0, "zero"}};
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Flip process: mean of A_1 for f_n = 1 + sin(n x) against the closed form,
 * vague convergence of f_n dx to dx, and the gap E_x[A_1] - 1 that does not
 * close along n with |sin(n x)| >= 0.8.
 */
inline ExperimentReport ex1_flip(HarnessConfig const& cfg)
{
    ExperimentReport r;
    r.id = "ex1";
    detail::describe(r, cfg);
    auto const model = ProcessModel{ModelKind::FlipJump};
    double const x = 0.5;
    double const t = 1.0;

    std::vector<int> ns = {1, 3, 5};
    for (int n : cfg.ladder)
    {
        if (std::find(ns.begin(), ns.end(), n) == ns.end())
        {
            ns.push_back(n);
        }
    }
    std::sort(ns.begin(), ns.end());
    std::vector<PathFunctional> fs;
    for (int n : ns)
    {
        double const k = n;
        fs.push_back(terminal_functional(
            PcafSpec{DensityPcaf{[k](double y) { return 1.0 + std::sin(k * y); }, 2.0, ""}}));
    }
    auto const est = expect_many(model, PointMass{x}, fs, cfg.mc(t, 0));
    double const decay = std::exp(-t) * std::sinh(t);
    std::vector<Verdict> match;
    std::vector<Verdict> gaps;
    double const gap_floor = 0.8 * std::sinh(1.0) / std::exp(1.0);
    for (std::size_t i = 0; i < ns.size(); ++i)
    {
        int const n = ns[i];
        double const closed = t + std::sin(n * x) * decay;
        r.put(n, mc_cell("mean_A", est[i]));
        r.put(n, detail::closed_cell("closed_form", closed));
        Cell gap{"gap", std::fabs(est[i].mean - t), est[i].std_error, CellKind::MonteCarlo,
                 est[i].n};
        r.put(n, gap);
        if (n == 1 || n == 3 || n == 5)
        {
            match.push_back(verdict_within("n=" + std::to_string(n), mc_cell("", est[i]), closed));
        }
        if (std::fabs(std::sin(n * x)) >= 0.8)
        {
            bool const ok = gap.value >= gap_floor - 3.0 * gap.error
                            && gap_floor - 3.0 * gap.error > 0;
            gaps.push_back({"n=" + std::to_string(n), ok ? Status::ExpectedGap : Status::Fail,
                            "gap " + detail::fmt(gap.value)});
        }
    }
    r.verdicts.push_back(verdict_all("mean matches closed form", match));

    // vague convergence: int tent d(f_n dx) -> int tent dx
    auto tent = [](double y) { return std::max(0.0, 1.0 - std::fabs(y - 1.0)); };
    std::vector<SmoothMeasure> seq;
    std::vector<int> const vn = {4, 16, 64};
    for (int n : vn)
    {
        seq.push_back(sin_shift(n, {-inf, inf}));
    }
    auto const table = vague_probe(seq, {tent}, {0.0, 2.0}, indicator({-inf, inf}), cfg.quad_tol);
    for (std::size_t i = 0; i < vn.size(); ++i)
    {
        r.put(vn[i], detail::quad_cell("vague_deviation", table.deviations[i][0], cfg.quad_tol));
    }
    r.verdicts.push_back(
        verdict_decreasing_below("vague deviation decays", r.column("vague_deviation"), inf));
    r.verdicts.push_back(verdict_all("gap persists", gaps, Status::ExpectedGap));
    return r;
}

//---------------------------------------------------------------------------//
/*!
 * Brownian local times at 1/n and 0: rho(delta_{1/n}, delta_0) and the
 * sup-L2 distance of the box local times from x = 2.
 */
inline ExperimentReport ex2_local_times(HarnessConfig const& cfg)
{
    ExperimentReport r;
    r.id = "ex2";
    detail::describe(r, cfg);
    auto const model = ProcessModel{ModelKind::FreeBM};
    std::vector<int> const ns = {1, 2, 4, 8, 16};
    double const eps = cfg.bandwidth();
    std::vector<PathFunctional> fs;
    for (int n : ns)
    {
        r.put(n, detail::quad_cell("rho", rho(model, dirac(1.0 / n), dirac(0.0), cfg.quad_tol),
                                   cfg.quad_tol));
        fs.push_back(sup_squared_functional(LocalTime{1.0 / n, eps}, LocalTime{0.0, eps},
                                            cfg.horizon_sup));
    }
    fs.push_back(sup_squared_functional(LocalTime{0.0, eps}, LocalTime{0.0, eps},
                                        cfg.horizon_sup));
    auto const est = expect_many(model, PointMass{2.0}, fs, cfg.mc(cfg.horizon_sup, 0));
    for (std::size_t i = 0; i < ns.size(); ++i)
    {
        r.put(ns[i], mc_cell("sup_l2", est[i]));
    }
    auto rho_col = r.column("rho");
    rho_col.pop_back();  // n in {1, 2, 4, 8}
    r.verdicts.push_back(verdict_decreasing_below("rho strictly decreasing", rho_col, inf));
    r.verdicts.push_back(verdict_decreasing("local time distance decreasing", r.column("sup_l2")));
    auto const self = est.back();
    r.verdicts.push_back({"self distance is zero",
                          self.mean == 0 && self.std_error == 0 ? Status::Pass : Status::Fail,
                          "mean " + detail::fmt(self.mean)});
    return r;
}

//---------------------------------------------------------------------------//
/*!
 * L2-convergent densities f_n = 1 + n^{-1/2} sin(n x) on [0, 1] under
 * Brownian motion: rho^2 <= |f_n - f|^2 and co-convergence of the sup and
 * discounted distances over the window [-4, 5].
 */
inline ExperimentReport ex3_l2_density(HarnessConfig const& cfg)
{
    ExperimentReport r;
    r.id = "ex3";
    detail::describe(r, cfg);
    auto const model = ProcessModel{ModelKind::FreeBM};
    std::vector<int> const ns = {2, 4, 8, 16};
    Interval const support{0.0, 1.0};
    Interval const window{-4.0, 5.0};
    r.parameters.emplace_back("window", "[-4,5]");
    auto const base = indicator(support);
    auto const base_spec = PcafSpec::from_density(base);
    std::vector<PathFunctional> sup_fs;
    std::vector<PathFunctional> disc_fs;
    for (int n : ns)
    {
        auto const mu_n = damped_sin_shift(n, support);
        double const k = n;
        QuadOptions q;
        q.abs_tol = cfg.quad_tol;
        double const l2 = integrate_adaptive([k](double y) {
                              double const s = std::sin(k * y);
                              return s * s / k;
                          }, 0.0, 1.0, q).value;
        r.put(n, detail::quad_cell("rho_sq", rho_squared(model, mu_n, base, cfg.quad_tol),
                                   4 * cfg.quad_tol));
        r.put(n, detail::quad_cell("l2_sq", l2, cfg.quad_tol));
        auto const spec = PcafSpec::from_density(mu_n);
        sup_fs.push_back(sup_squared_functional(spec, base_spec, cfg.horizon_sup));
        disc_fs.push_back(discounted_squared_functional(spec, base_spec, 1.0));
    }
    auto const sup = expect_many(model, MWindow{window}, sup_fs, cfg.mc(cfg.horizon_sup, 0));
    auto const disc = expect_many(model, MWindow{window}, disc_fs, cfg.mc(cfg.horizon_disc, 1));
    for (std::size_t i = 0; i < ns.size(); ++i)
    {
        r.put(ns[i], mc_cell("sup_l2", sup[i]));
        r.put(ns[i], mc_cell("discounted_l2", disc[i]));
    }
    r.verdicts.push_back(
        verdict_dominated("rho^2 below L2 distance", r.column("rho_sq"), r.column("l2_sq")));
    r.verdicts.push_back(verdict_decreasing("rho decreasing", r.column("rho_sq")));
    auto const vs = verdict_decreasing("sup distance decreasing", r.column("sup_l2"));
    auto const vd = verdict_decreasing("discounted distance decreasing",
                                       r.column("discounted_l2"));
    r.verdicts.push_back(vs);
    r.verdicts.push_back(vd);
    r.verdicts.push_back(verdict_all("sup and discounted trends agree", {vs, vd}));
    return r;
}

//---------------------------------------------------------------------------//
/*!
 * Cantor approximants under Brownian motion: Cauchy table of rho(mu_n, mu_m)
 * and the windowed sup distance between the PCAFs of levels n and 2n.
 */
inline ExperimentReport ex4_cantor(HarnessConfig const& cfg)
{
    ExperimentReport r;
    r.id = "ex4";
    detail::describe(r, cfg);
    auto const model = ProcessModel{ModelKind::FreeBM};
    int const levels = 6;
    Interval const window{-2.0, 3.0};
    r.parameters.emplace_back("window", "[-2,3]");
    std::vector<std::vector<double>> table(levels + 1, std::vector<double>(levels + 1, 0.0));
    for (int n = 1; n <= levels; ++n)
    {
        for (int m = n + 1; m <= levels; ++m)
        {
            table[n][m] = rho(model, cantor_level(n), cantor_level(m), cfg.quad_tol);
            r.put(n, detail::quad_cell("rho_to_" + std::to_string(m), table[n][m],
                                       cfg.quad_tol));
        }
    }
    for (int n = 1; n < levels; ++n)
    {
        double sup = 0;
        for (int m = n + 1; m <= levels; ++m)
        {
            sup = std::max(sup, table[n][m]);
        }
        r.put(n, detail::quad_cell("cauchy_sup", sup, cfg.quad_tol));
    }
    std::vector<PathFunctional> fs;
    std::vector<int> const mc_n = {1, 2, 3, 4};
    for (int n : mc_n)
    {
        fs.push_back(sup_squared_functional(CantorPcaf{n}, CantorPcaf{2 * n}, cfg.horizon_sup));
    }
    auto const est = expect_many(model, MWindow{window}, fs, cfg.mc(cfg.horizon_sup, 0));
    for (std::size_t i = 0; i < mc_n.size(); ++i)
    {
        r.put(mc_n[i], mc_cell("sup_l2_n_2n", est[i]));
    }
    r.verdicts.push_back(
        verdict_decreasing_below("rho Cauchy sup decreasing", r.column("cauchy_sup"), inf));
    r.verdicts.push_back(verdict_decreasing("PCAF distance decreasing", r.column("sup_l2_n_2n")));
    return r;
}

//---------------------------------------------------------------------------//
/*!
 * Static killed process with mu_n = (1 + x^-2)(1 + n^{-1/2} sin(n x)) dx:
 * the m-distance vanishes while rho and the kappa-distance do not.
 */
inline ExperimentReport ex5_kappa_necessity(HarnessConfig const& cfg)
{
    ExperimentReport r;
    r.id = "ex5";
    detail::describe(r, cfg);
    auto const model = ProcessModel{ModelKind::KilledStatic};
    auto const base = killed_base();
    auto const base_spec = PcafSpec::from_density(base);
    Interval const kappa_window{1e-3, 1.0};
    std::vector<PathFunctional> fs;
    for (int n : cfg.ladder)
    {
        auto const mu_n = perturbed(n);
        r.put(n, detail::quad_cell("rho_sq", rho_squared(model, mu_n, base, cfg.quad_tol),
                                   cfg.quad_tol));
        r.put(n, detail::quad_cell("E_m_closed",
                                   detail::static_sup_distance(n, cfg.horizon_sup, {0.0, 1.0},
                                                               false, cfg.quad_tol),
                                   cfg.quad_tol));
        r.put(n, detail::quad_cell("E_kappa_closed",
                                   detail::static_sup_distance(n, cfg.horizon_sup, {0.0, 1.0},
                                                               true, cfg.quad_tol),
                                   cfg.quad_tol));
        r.put(n, detail::quad_cell("E_kappa_closed_window",
                                   detail::static_sup_distance(n, cfg.horizon_sup, kappa_window,
                                                               true, cfg.quad_tol),
                                   cfg.quad_tol));
        fs.push_back(sup_squared_functional(PcafSpec::from_density(mu_n), base_spec,
                                            cfg.horizon_sup));
    }
    auto const em = expect_many(model, MWindow{{0.0, 1.0}}, fs, cfg.mc(cfg.horizon_sup, 0));
    auto const ek = expect_many(model, Kappa{kappa_window}, fs, cfg.mc(cfg.horizon_sup, 1));
    double worst_z = 0;
    for (std::size_t i = 0; i < cfg.ladder.size(); ++i)
    {
        int const n = cfg.ladder[i];
        r.put(n, mc_cell("E_m_dist", em[i]));
        r.put(n, mc_cell("E_kappa_window_mc", ek[i]));
        double const closed = r.at(n, "E_kappa_closed_window")->value;
        worst_z = std::max(worst_z, std::fabs(ek[i].mean - closed) / ek[i].std_error);
    }
    r.verdicts.push_back(
        verdict_decreasing_below("E_m distance vanishes", r.column("E_m_dist"), 0.05));
    r.verdicts.push_back(verdict_range("rho^2 stays near pi/2", r.column("rho_sq"), 32, 1.3,
                                       1.8, Status::ExpectedGap));
    r.verdicts.push_back(verdict_plateau("E_kappa distance plateaus", r.column("E_kappa_closed")));
    r.verdicts.push_back({"kappa MC matches closed form", worst_z <= 4 ? Status::Pass : Status::Fail,
                          "max |z| " + detail::fmt(worst_z)});
    r.notes.push_back("rho^2 evaluates to a finite limit pi/2 = 1.5708 (bounded away from 0); "
                      "the kappa distance tends to pi; neither diverges");
    return r;
}

//---------------------------------------------------------------------------//
/*!
 * Absorbed Brownian motion with spikes n^{3/2} 1_{(0, 1/n)}: the m-distance
 * to 0 vanishes while rho^2 -> 2/3 and the nu0 pairing stays positive.
 */
inline ExperimentReport ex6_nu0_necessity(HarnessConfig const& cfg)
{
    ExperimentReport r;
    r.id = "ex6";
    detail::describe(r, cfg);
    auto const model = ProcessModel{ModelKind::AbsorbedBM};
    Interval const window{0.0, 8.0};
    r.parameters.emplace_back("window", "(0,8)");
    std::vector<PathFunctional> fs;
    for (int n : cfg.ladder)
    {
        auto const mu_n = spike(n);
        r.put(n, detail::quad_cell("rho_sq", rho_squared(model, mu_n, zero_measure(),
                                                         cfg.quad_tol),
                                   4 * cfg.quad_tol));
        r.put(n, detail::quad_cell("nu0_pairing", nu0_pairing(model, 1.0, mu_n, cfg.quad_tol),
                                   cfg.quad_tol));
        fs.push_back(sup_squared_functional(PcafSpec::from_density(mu_n), detail::zero_pcaf(),
                                            cfg.horizon_sup));
    }
    // The grid must resolve the narrowest spike: a step of spread sqrt(dt)
    // wider than 1/n lumps whole visits into single samples and inflates
    // the squared functional.
    auto mc = cfg.mc(cfg.horizon_sup, 0);
    if (!cfg.ladder.empty())
    {
        double const n_max = *std::max_element(cfg.ladder.begin(), cfg.ladder.end());
        mc.sim.dt = std::min(cfg.dt, 0.5 / (n_max * n_max));
    }
    r.parameters.emplace_back("dt_spike", detail::fmt(mc.sim.dt));
    auto const em = expect_many(model, MWindow{window}, fs, mc);
    for (std::size_t i = 0; i < cfg.ladder.size(); ++i)
    {
        r.put(cfg.ladder[i], mc_cell("E_m_dist", em[i]));
    }
    // the column rises from n = 1 to 2 before it decays, so this is a trend test
    r.verdicts.push_back(
        verdict_trend_below("E_m distance vanishes", r.column("E_m_dist"), 0.05));
    auto rho_col = r.column("rho_sq");
    std::vector<Verdict> near;
    for (auto const& [n, c] : rho_col)
    {
        if (n >= 64)
        {
            near.push_back(
                {"n=" + detail::fmt(n),
                 std::fabs(c.value - 2.0 / 3.0) <= 0.15 * 2.0 / 3.0 ? Status::Pass : Status::Fail,
                 detail::fmt(c.value)});
        }
    }
    if (near.empty())
    {
        near.push_back({"ladder", Status::Inconclusive, "no n >= 64"});
    }
    r.verdicts.push_back(verdict_all("rho^2 near 2/3", near, Status::ExpectedGap));
    r.verdicts.push_back(verdict_plateau("nu0 pairing plateaus", r.column("nu0_pairing")));
    return r;
}

//---------------------------------------------------------------------------//
/*!
 * Both directions at desk scale: a family with rho -> 0 whose full-weight
 * distance vanishes, and one whose rho and full-weight distance both stall.
 */
inline ExperimentReport theorem_roundtrip(HarnessConfig const& cfg)
{
    ExperimentReport r;
    r.id = "roundtrip";
    detail::describe(r, cfg);

    // converging: damped sine densities under Brownian motion (m only)
    auto const bm = ProcessModel{ModelKind::FreeBM};
    Interval const support{0.0, 1.0};
    auto const base = indicator(support);
    auto const base_spec = PcafSpec::from_density(base);
    std::vector<int> const conv_n = {2, 4, 8, 16};
    std::vector<PathFunctional> fs;
    for (int n : conv_n)
    {
        auto const mu_n = damped_sin_shift(n, support);
        r.put(n, detail::quad_cell("conv_rho_sq", rho_squared(bm, mu_n, base, cfg.quad_tol),
                                   4 * cfg.quad_tol));
        fs.push_back(sup_squared_functional(PcafSpec::from_density(mu_n), base_spec,
                                            cfg.horizon_sup));
    }
    auto const conv = expect_many(bm, MWindow{{-4.0, 5.0}}, fs, cfg.mc(cfg.horizon_sup, 0));
    for (std::size_t i = 0; i < conv_n.size(); ++i)
    {
        r.put(conv_n[i], mc_cell("conv_full_dist", conv[i]));
    }

    // stalling: perturbed densities on the static killed model (m + kappa)
    auto const killed = ProcessModel{ModelKind::KilledStatic};
    auto const kbase = killed_base();
    auto const kspec = PcafSpec::from_density(kbase);
    fs.clear();
    for (int n : cfg.ladder)
    {
        r.put(n, detail::quad_cell("stall_rho_sq", rho_squared(killed, perturbed(n), kbase,
                                                               cfg.quad_tol),
                                   cfg.quad_tol));
        fs.push_back(sup_squared_functional(PcafSpec::from_density(perturbed(n)), kspec,
                                            cfg.horizon_sup));
    }
    auto const em = expect_many(killed, MWindow{{0.0, 1.0}}, fs, cfg.mc(cfg.horizon_sup, 1));
    for (std::size_t i = 0; i < cfg.ladder.size(); ++i)
    {
        int const n = cfg.ladder[i];
        double const kappa = detail::static_sup_distance(n, cfg.horizon_sup, {0.0, 1.0}, true,
                                                         cfg.quad_tol);
        r.put(n, Cell{"stall_full_dist", em[i].mean + kappa, em[i].std_error + cfg.quad_tol,
                      CellKind::MonteCarlo, em[i].n});
    }

    auto const conv_ok = verdict_all(
        "converging family: rho and distance vanish",
        {verdict_decreasing("rho", r.column("conv_rho_sq")),
         verdict_decreasing("distance", r.column("conv_full_dist"))});
    auto const stall_ok = verdict_all(
        "stalling family: rho and distance stall",
        {verdict_plateau("rho", r.column("stall_rho_sq"), Status::Pass),
         verdict_plateau("distance", r.column("stall_full_dist"), Status::Pass)});
    r.verdicts.push_back(conv_ok);
    r.verdicts.push_back(stall_ok);
    r.verdicts.push_back(verdict_all("rho and PCAF convergence agree", {conv_ok, stall_ok}));
    return r;
}

//---------------------------------------------------------------------------//

inline std::vector<std::string> const& experiment_ids()
{
    static std::vector<std::string> const ids
        = {"ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "roundtrip"};
    return ids;
}

/*!
 * Run one experiment by id. Estimator failures leave the report marked
 * inconclusive with the error recorded.
 */
inline ExperimentReport run_experiment(std::string_view id, HarnessConfig const& cfg)
{
    using Fn = ExperimentReport (*)(HarnessConfig const&);
    Fn fn = nullptr;
    if (id == "ex1") fn = ex1_flip;
    else if (id == "ex2") fn = ex2_local_times;
    else if (id == "ex3") fn = ex3_l2_density;
    else if (id == "ex4") fn = ex4_cantor;
    else if (id == "ex5") fn = ex5_kappa_necessity;
    else if (id == "ex6") fn = ex6_nu0_necessity;
    else if (id == "roundtrip") fn = theorem_roundtrip;
    else throw ConfigError("unknown experiment '" + std::string(id) + "'");
    try
    {
        return fn(cfg);
    }
    catch (std::exception const& e)
    {
        ExperimentReport r;
        r.id = std::string(id);
        detail::describe(r, cfg);
        r.verdicts.push_back({"completed", Status::Inconclusive, e.what()});
        return r;
    }
}

}  // namespace revuz
