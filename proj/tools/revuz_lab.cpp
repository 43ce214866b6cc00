//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/revuz_lab.cpp
//! Command-line entry point: experiments, rho, estimates and path dumps.
//---------------------------------------------------------------------------//
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "revuz/config.hpp"
#include "revuz/harness.hpp"
#include "revuz/kernels.hpp"
#include "revuz/literals.hpp"
#include "revuz/report_io.hpp"
#include "revuz/simulate.hpp"

namespace
{

int run_command(std::string const& id, revuz::HarnessConfig cfg, std::string const& config,
                std::string const& out)
{
    if (!config.empty())
    {
        revuz::apply_config_file(cfg, config);
    }
    std::vector<std::string> ids;
    if (id == "all")
    {
        ids = revuz::experiment_ids();
    }
    else
    {
        ids.push_back(id);
    }
    bool ok = true;
    for (auto const& e : ids)
    {
        auto const report = revuz::run_experiment(e, cfg);
        revuz::write_report(out, report);
        for (auto const& v : report.verdicts)
        {
            std::printf("%-10s %-13s %s (%s)\n", e.c_str(), revuz::to_string(v.status),
                        v.name.c_str(), v.detail.c_str());
        }
        ok = ok && report.passed();
    }
    return ok ? 0 : 1;
}

void print_estimates(std::vector<std::string> const& names,
                     std::vector<revuz::McEstimate> const& est, std::string const& format)
{
    if (format == "json")
    {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < est.size(); ++i)
        {
            rows.push_back({{"name", names[i]},
                            {"mean", est[i].mean},
                            {"std_error", est[i].std_error},
                            {"n", est[i].n},
                            {"tail_bound", est[i].tail_bound},
                            {"seed", est[i].seed}});
        }
        std::cout << rows.dump(2) << '\n';
        return;
    }
    std::printf("name,mean,std_error,n,tail_bound,seed\n");
    for (std::size_t i = 0; i < est.size(); ++i)
    {
        std::printf("%s,%.17g,%.17g,%zu,%.17g,%llu\n", names[i].c_str(), est[i].mean,
                    est[i].std_error, est[i].n, est[i].tail_bound,
                    static_cast<unsigned long long>(est[i].seed));
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"revuz-lab: smooth measures and additive functionals by quadrature and "
                 "Monte Carlo"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a scripted experiment");
    std::string exp_id;
    std::string config;
    std::string out_dir = "results";
    revuz::HarnessConfig hcfg;
    run->add_option("experiment", exp_id, "ex1..ex6, roundtrip or all")
        ->required()
        ->check(CLI::IsMember({"ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "roundtrip", "all"}));
    run->add_option("--seed", hcfg.seed, "master seed");
    run->add_option("--paths", hcfg.paths, "paths per Monte Carlo cell");
    run->add_option("--dt", hcfg.dt, "time step");
    run->add_option("--workers", hcfg.workers, "worker threads");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--config", config, "key = value file overriding flags");

    // rho
    auto* rho_cmd = app.add_subcommand("rho", "energy distance between two measures");
    std::string model_name;
    std::string mu_text;
    std::string nu_text;
    double tol = 2.5e-10;
    rho_cmd->add_option("--model", model_name)->required();
    rho_cmd->add_option("--mu", mu_text, "measure literal")->required();
    rho_cmd->add_option("--nu", nu_text, "measure literal")->required();
    rho_cmd->add_option("--tol", tol, "quadrature tolerance");

    // estimate
    auto* est_cmd = app.add_subcommand("estimate", "Monte Carlo expectation of path functionals");
    std::string weighting_text;
    std::vector<std::string> functional_texts;
    std::string format = "csv";
    revuz::McConfig mcfg;
    est_cmd->add_option("--model", model_name)->required();
    est_cmd->add_option("--weighting", weighting_text, "weighting literal")->required();
    est_cmd->add_option("--functional", functional_texts, "functional literal (repeatable)")
        ->required();
    est_cmd->add_option("--paths", mcfg.paths);
    est_cmd->add_option("--dt", mcfg.sim.dt);
    est_cmd->add_option("--horizon", mcfg.sim.horizon);
    est_cmd->add_option("--seed", mcfg.sim.seed);
    est_cmd->add_option("--workers", mcfg.workers);
    est_cmd->add_option("--out", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // path
    auto* path_cmd = app.add_subcommand("path", "dump one simulated path as CSV (t,x,alive)");
    double x0 = 0;
    std::uint64_t index = 0;
    revuz::SimConfig scfg;
    path_cmd->add_option("--model", model_name)->required();
    path_cmd->add_option("--x0", x0)->required();
    path_cmd->add_option("--dt", scfg.dt);
    path_cmd->add_option("--horizon", scfg.horizon);
    path_cmd->add_option("--seed", scfg.seed);
    path_cmd->add_option("--index", index, "path index");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            return run_command(exp_id, hcfg, config, out_dir);
        }
        if (*rho_cmd)
        {
            auto const model = revuz::model_from_name(model_name);
            double const v = revuz::rho(model, revuz::measure_from_literal(mu_text),
                                        revuz::measure_from_literal(nu_text), tol);
            std::printf("%.15g\n", v);
            return 0;
        }
        if (*est_cmd)
        {
            auto const model = revuz::model_from_name(model_name);
            auto const w = revuz::weighting_from_literal(weighting_text);
            std::vector<std::string> names;
            std::vector<revuz::PathFunctional> fs;
            for (auto const& t : functional_texts)
            {
                auto nf = revuz::functional_from_literal(t, mcfg.sim.horizon);
                names.push_back(nf.name);
                fs.push_back(std::move(nf.f));
            }
            print_estimates(names, revuz::expect_many(model, w, fs, mcfg), format);
            return 0;
        }
        if (*path_cmd)
        {
            auto const model = revuz::model_from_name(model_name);
            scfg.path_index = index;
            auto rng = revuz::rng_for(scfg.seed, index);
            revuz::write_path_csv(std::cout, revuz::simulate_path(model, x0, scfg, rng));
            return 0;
        }
    }
    catch (std::exception const& e)
    {
        std::fprintf(stderr, "revuz-lab: %s\n", e.what());
        return 2;
    }
    return 0;
}
