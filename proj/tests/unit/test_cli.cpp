//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_cli.cpp
//! Drives the revuz-lab binary named by $REVUZ_LAB.
//---------------------------------------------------------------------------//
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "catch_amalgamated.hpp"
#include "json.hpp"

namespace
{
struct Outcome
{
    int status{-1};
    std::string out;
};

Outcome run(std::string const& args)
{
    char const* exe = std::getenv("REVUZ_LAB");
    REQUIRE(exe != nullptr);
    std::string const cmd = std::string(exe) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Outcome o;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
    {
        o.out.append(buf, n);
    }
    int const raw = pclose(pipe);
    o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return o;
}
}  // namespace

TEST_CASE("rho prints one decimal", "[cli]")
{
    auto const o = run(R"j(rho --model free_bm --mu '{"type":"dirac","x":0}' --nu '{"type":"dirac","x":1}')j");
    CHECK(o.status == 0);
    CHECK(std::stod(o.out) == Catch::Approx(1.0345987528005102255).epsilon(1e-10));
    CHECK(o.out.find('\n') == o.out.size() - 1);
}

TEST_CASE("estimate in csv and json", "[cli]")
{
    std::string const common
        = R"j(estimate --model killed_static --weighting '{"type":"kappa","window":[0.2,0.9]}' )j"
          R"j(--functional '{"kind":"terminal","pcaf":{"type":"density","expr":"one"},"name":"t"}' )j"
          R"j(--paths 100 --dt 0.01 --horizon 1 --seed 3)j";
    auto const csv = run(common + " --out csv");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("name,mean,std_error,n,tail_bound,seed\nt,", 0) == 0);
    CHECK(csv.out.find(",100,") != std::string::npos);

    auto const js = run(common + " --out json");
    CHECK(js.status == 0);
    auto const j = nlohmann::json::parse(js.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["name"] == "t");
    CHECK(j[0]["n"] == 100);
    CHECK(j[0]["seed"] == 3);
    CHECK(j[0]["mean"].get<double>() > 0.0);
}

TEST_CASE("path dump", "[cli]")
{
    auto const o = run("path --model flip_jump --x0 1 --horizon 2 --seed 4");
    CHECK(o.status == 0);
    CHECK(o.out.rfind("t,x,alive\n0,1,1\n", 0) == 0);
}

TEST_CASE("bad input exits with status 2", "[cli]")
{
    CHECK(run(R"j(rho --model wiener --mu '{"type":"dirac","x":0}' --nu '{"type":"dirac","x":0}')j").status
          == 2);
    CHECK(run(R"j(rho --model free_bm --mu '{"type":"dirac"}' --nu '{"type":"dirac","x":0}')j").status
          == 2);
}

TEST_CASE("run writes csv and json with provenance", "[cli]")
{
    auto const dir = std::filesystem::temp_directory_path() / "revuz_cli_run";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto const cfg = dir / "small.cfg";
    std::ofstream(cfg) << "# reduced run\npaths = 2000\ndt = 0.01\n";
    auto const o = run("run ex1 --paths 50 --config " + cfg.string() + " --out " + dir.string());
    CHECK(o.status == 0);
    CHECK(std::filesystem::exists(dir / "ex1.csv"));
    std::ifstream in(dir / "ex1.json");
    auto const j = nlohmann::json::parse(in);
    CHECK(j["parameters"]["paths"] == "2000");
    CHECK(j["provenance"]["build_id"].get<std::string>().size() > 0);
    CHECK(j["passed"] == true);
    std::filesystem::remove_all(dir);
}
