//---------------------------------------------------------------------------//
// Copyright revuz-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file revuz/report_io.hpp
//! CSV and JSON serialization of experiment reports.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "report.hpp"

namespace revuz
{

//! Long-format table: one line per cell.
inline void write_csv(std::ostream& os, ExperimentReport const& r)
{
    os << "experiment,n,column,value,error,kind,samples\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (auto const& row : r.rows)
    {
        for (auto const& c : row.cells)
        {
            os << r.id << ',' << num(row.n) << ',' << c.column << ',' << num(c.value) << ','
               << num(c.error) << ',' << to_string(c.kind) << ',' << c.samples << '\n';
        }
    }
}

inline nlohmann::json to_json(ExperimentReport const& r)
{
    nlohmann::json j;
    j["experiment"] = r.id;
    j["provenance"] = {{"build_id", r.build}, {"seed", r.seed}, {"generator", "revuz-lab"}};
    auto& params = j["parameters"] = nlohmann::json::object();
    for (auto const& [k, v] : r.parameters)
    {
        params[k] = v;
    }
    auto& rows = j["rows"] = nlohmann::json::array();
    for (auto const& row : r.rows)
    {
        nlohmann::json cells = nlohmann::json::array();
        for (auto const& c : row.cells)
        {
            cells.push_back({{"column", c.column},
                             {"value", c.value},
                             {"error", c.error},
                             {"kind", to_string(c.kind)},
                             {"samples", c.samples}});
        }
        rows.push_back({{"n", row.n}, {"cells", std::move(cells)}});
    }
    auto& verdicts = j["verdicts"] = nlohmann::json::array();
    for (auto const& v : r.verdicts)
    {
        verdicts.push_back({{"name", v.name}, {"status", to_string(v.status)}, {"detail", v.detail}});
    }
    j["notes"] = r.notes;
    j["passed"] = r.passed();
    return j;
}

//! Write <dir>/<id>.csv and <dir>/<id>.json.
inline void write_report(std::filesystem::path const& dir, ExperimentReport const& r)
{
    std::filesystem::create_directories(dir);
    std::ofstream csv(dir / (r.id + ".csv"));
    write_csv(csv, r);
    std::ofstream json(dir / (r.id + ".json"));
    json << to_json(r).dump(2) << '\n';
    if (!csv || !json)
    {
        throw std::runtime_error("failed to write report files in " + dir.string());
    }
}

}  // namespace revuz
