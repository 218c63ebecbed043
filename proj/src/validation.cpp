// SPDX-License-Identifier: Apache-2.0
//
// riscade - cascaded channel modeling and sounding simulation for
// RIS-assisted wireless links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "riscade/validation.hpp"

#include "riscade/csv.hpp"
#include "riscade/errors.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace riscade
{

namespace csvns = riscade::csv;

namespace
{

std::ifstream open_or_throw(const std::filesystem::path &p)
{
    std::ifstream is(p);
    if (!is)
        throw parse_error(p.string() + ": cannot open");
    return is;
}

void check_unique_label(std::set<std::string> &seen, const std::string &label, const std::string &name)
{
    if (!seen.insert(label).second)
        throw schema_error(name + ": duplicate label '" + label + "'");
}

} // namespace

TxRisChannel load_table2(std::istream &is, const std::string &name)
{
    const auto t = csvns::read_table(is, name);
    t.require_header({"label", "power_db", "delay_ns", "aoa_ris_deg"});
    TxRisChannel sub;
    std::set<std::string> seen;
    for (const auto &row : t.rows)
    {
        check_unique_label(seen, row[0], name);
        TxRisPath p;
        p.label = row[0];
        p.power_db = Db(csvns::parse_double(row[1], name + " power_db"));
        p.delay_ns = csvns::parse_double(row[2], name + " delay_ns");
        p.aoa = RisAngle(csvns::parse_double(row[3], name + " aoa_ris_deg"));
        // The measured table reports no Tx departure angle; the horn faces
        // the RIS, so the departure stays at the frame origin.
        p.aod = TxAngle(0.0);
        sub.paths.push_back(std::move(p));
    }
    sub.validate();
    return sub;
}

RisRxChannel load_table3(std::istream &is, const std::string &name)
{
    const auto t = csvns::read_table(is, name);
    t.require_header({"label", "power_db", "delay_ns", "aod_ris_deg", "aoa_rx_deg"});
    RisRxChannel sub;
    std::set<std::string> seen;
    for (const auto &row : t.rows)
    {
        check_unique_label(seen, row[0], name);
        RisRxPath p;
        p.label = row[0];
        p.power_db = Db(csvns::parse_double(row[1], name + " power_db"));
        p.delay_ns = csvns::parse_double(row[2], name + " delay_ns");
        p.aod = RisAngle(csvns::parse_double(row[3], name + " aod_ris_deg"));
        p.aoa = RxAngle(csvns::parse_double(row[4], name + " aoa_rx_deg"));
        sub.paths.push_back(std::move(p));
    }
    sub.validate();
    return sub;
}

std::map<std::string, Db> load_fris(std::istream &is, const std::string &name)
{
    const auto t = csvns::read_table(is, name);
    t.require_header({"pair_label", "f_ris_db"});
    std::map<std::string, Db> out;
    for (const auto &row : t.rows)
    {
        if (!out.emplace(row[0], Db(csvns::parse_double(row[1], name + " f_ris_db"))).second)
            throw schema_error(name + ": duplicate pair label '" + row[0] + "'");
    }
    return out;
}

std::map<std::string, MeasuredCascade> load_measured(std::istream &is, const std::string &name)
{
    const auto t = csvns::read_table(is, name);
    t.require_header({"pair_label", "power_db", "power_no_ris_db"});
    std::map<std::string, MeasuredCascade> out;
    for (const auto &row : t.rows)
    {
        MeasuredCascade m;
        m.power_db = Db(csvns::parse_double(row[1], name + " power_db"));
        if (!row[2].empty())
            m.power_no_ris_db = Db(csvns::parse_double(row[2], name + " power_no_ris_db"));
        if (!out.emplace(row[0], m).second)
            throw schema_error(name + ": duplicate pair label '" + row[0] + "'");
    }
    return out;
}

MeasuredTables load_measured_tables(const std::string &dir)
{
    namespace fs = std::filesystem;
    const fs::path base(dir);
    MeasuredTables tables;
    {
        auto is = open_or_throw(base / "table2.csv");
        tables.tx_ris = load_table2(is, (base / "table2.csv").string());
    }
    {
        auto is = open_or_throw(base / "table3.csv");
        tables.ris_rx = load_table3(is, (base / "table3.csv").string());
    }
    {
        auto is = open_or_throw(base / "fris.csv");
        tables.f_ris_db = load_fris(is, (base / "fris.csv").string());
    }
    {
        auto is = open_or_throw(base / "measured.csv");
        tables.measured = load_measured(is, (base / "measured.csv").string());
    }
    return tables;
}

ValidationReport build_validation_table(const MeasuredTables &tables, bool table_iv_as_printed)
{
    ValidationReport report;

    // P_n2 per rx label, with the optional printed-table C/D exchange.
    std::map<std::string, Db> p_n2;
    for (const auto &p : tables.ris_rx.paths)
        p_n2[p.label] = p.power_db;
    if (table_iv_as_printed && p_n2.count("C") && p_n2.count("D"))
    {
        std::swap(p_n2["C"], p_n2["D"]);
        report.warnings.push_back(
            "table-iv-as-printed: P_n2 of labels C and D exchanged to match the printed comparison "
            "table (the sub-channel table pairs them the other way); use --no-table-iv-as-printed "
            "for the sub-channel pairing");
    }

    bool have_any = false;
    Db max_abs(0.0), min_abs(0.0);
    for (const auto &rx : tables.ris_rx.paths)
    {
        for (const auto &tx : tables.tx_ris.paths)
        {
            ValidationRecord r;
            r.label = tx.label + "-" + rx.label;
            r.p_n1 = tx.power_db;
            r.p_n2 = p_n2.at(rx.label);

            auto fit = tables.f_ris_db.find(r.label);
            if (fit == tables.f_ris_db.end())
                throw schema_error("validation: no F_RIS entry for pair '" + r.label + "'");
            r.f_ris = fit->second;

            auto mit = tables.measured.find(r.label);
            if (mit == tables.measured.end())
                throw schema_error("validation: no measured power for pair '" + r.label + "'");
            r.p_measured = mit->second.power_db;
            r.p_no_ris = mit->second.power_no_ris_db;

            r.p_conv = power_cascade_db(r.p_n1, r.p_n2, r.f_ris);
            r.delta_p = delta_p(r.p_conv, r.p_measured);

            const Db a = abs(r.delta_p);
            if (!have_any || a > max_abs)
                max_abs = a;
            if (!have_any || a < min_abs)
                min_abs = a;
            have_any = true;
            report.records.push_back(std::move(r));
        }
    }
    report.max_abs_delta_p = max_abs;
    report.min_abs_delta_p = min_abs;
    return report;
}

std::string validation_csv(const ValidationReport &report)
{
    std::ostringstream os;
    os << "pair,p_n1_db,p_n2_db,f_ris_db,p_conv_db,p_measured_db,p_no_ris_db,delta_p_db\n";
    for (const auto &r : report.records)
    {
        os << r.label << ',' << csvns::format_db_fixed(r.p_n1) << ',' << csvns::format_db_fixed(r.p_n2)
           << ',' << csvns::format_db_fixed(r.f_ris) << ',' << csvns::format_db_fixed(r.p_conv) << ','
           << csvns::format_db_fixed(r.p_measured) << ','
           << (r.p_no_ris ? csvns::format_db_fixed(*r.p_no_ris) : std::string()) << ','
           << csvns::format_db_fixed(r.delta_p) << '\n';
    }
    return os.str();
}

std::string validation_text(const ValidationReport &report)
{
    std::ostringstream os;
    os << "pair    P_n1      P_n2      F_RIS    P_conv     P_meas     dP\n";
    for (const auto &r : report.records)
    {
        auto f = [](Db v) { return csvns::format_db_fixed(v); };
        os << r.label << "   " << f(r.p_n1) << "   " << f(r.p_n2) << "   " << f(r.f_ris) << "   "
           << f(r.p_conv) << "   " << f(r.p_measured) << "   " << f(r.delta_p) << '\n';
    }
    os << "max |dP| = " << csvns::format_db_fixed(report.max_abs_delta_p)
       << " dB, min |dP| = " << csvns::format_db_fixed(report.min_abs_delta_p) << " dB\n";
    for (const auto &w : report.warnings)
        os << "warning: " << w << '\n';
    return os.str();
}

// --- synthesized-product CSV round trips --------------------------------

std::string tx_ris_csv(const TxRisChannel &sub)
{
    std::ostringstream os;
    os << "label,power_db,delay_ns,aod_tx_deg,aoa_ris_deg,phase_rad\n";
    for (const auto &p : sub.paths)
        os << p.label << ',' << csvns::format_full(p.power_db.value()) << ','
           << csvns::format_full(p.delay_ns) << ',' << csvns::format_full(p.aod.degrees()) << ','
           << csvns::format_full(p.aoa.degrees()) << ',' << csvns::format_full(p.phase_rad) << '\n';
    return os.str();
}

std::string ris_rx_csv(const RisRxChannel &sub)
{
    std::ostringstream os;
    os << "label,power_db,delay_ns,aod_ris_deg,aoa_rx_deg,phase_rad\n";
    for (const auto &p : sub.paths)
        os << p.label << ',' << csvns::format_full(p.power_db.value()) << ','
           << csvns::format_full(p.delay_ns) << ',' << csvns::format_full(p.aod.degrees()) << ','
           << csvns::format_full(p.aoa.degrees()) << ',' << csvns::format_full(p.phase_rad) << '\n';
    return os.str();
}

TxRisChannel load_tx_ris_csv(std::istream &is, const std::string &name)
{
    const auto t = csvns::read_table(is, name);
    t.require_header({"label", "power_db", "delay_ns", "aod_tx_deg", "aoa_ris_deg", "phase_rad"});
    TxRisChannel sub;
    std::set<std::string> seen;
    for (const auto &row : t.rows)
    {
        check_unique_label(seen, row[0], name);
        TxRisPath p;
        p.label = row[0];
        p.power_db = Db(csvns::parse_double(row[1], name + " power_db"));
        p.delay_ns = csvns::parse_double(row[2], name + " delay_ns");
        p.aod = TxAngle(csvns::parse_double(row[3], name + " aod_tx_deg"));
        p.aoa = RisAngle(csvns::parse_double(row[4], name + " aoa_ris_deg"));
        p.phase_rad = csvns::parse_double(row[5], name + " phase_rad");
        sub.paths.push_back(std::move(p));
    }
    sub.validate();
    return sub;
}

RisRxChannel load_ris_rx_csv(std::istream &is, const std::string &name)
{
    const auto t = csvns::read_table(is, name);
    t.require_header({"label", "power_db", "delay_ns", "aod_ris_deg", "aoa_rx_deg", "phase_rad"});
    RisRxChannel sub;
    std::set<std::string> seen;
    for (const auto &row : t.rows)
    {
        check_unique_label(seen, row[0], name);
        RisRxPath p;
        p.label = row[0];
        p.power_db = Db(csvns::parse_double(row[1], name + " power_db"));
        p.delay_ns = csvns::parse_double(row[2], name + " delay_ns");
        p.aod = RisAngle(csvns::parse_double(row[3], name + " aod_ris_deg"));
        p.aoa = RxAngle(csvns::parse_double(row[4], name + " aoa_rx_deg"));
        p.phase_rad = csvns::parse_double(row[5], name + " phase_rad");
        sub.paths.push_back(std::move(p));
    }
    sub.validate();
    return sub;
}

std::string cascade_csv(const std::vector<CascadePath> &paths)
{
    std::ostringstream os;
    os << "label,power_db,delay_ns,aoa_rx_deg,phase_rad\n";
    for (const auto &p : paths)
    {
        os << p.label << ',';
        if (p.power_db.is_no_power())
            os << "-inf";
        else
            os << csvns::format_full(p.power_db.value());
        os << ',' << csvns::format_full(p.delay_ns) << ',' << csvns::format_full(p.aoa_rx.degrees())
           << ',' << csvns::format_full(p.phase_rad) << '\n';
    }
    return os.str();
}

std::vector<CascadePath> load_cascade_csv(std::istream &is, const std::string &name)
{
    const auto t = csvns::read_table(is, name);
    t.require_header({"label", "power_db", "delay_ns", "aoa_rx_deg", "phase_rad"});
    std::vector<CascadePath> out;
    std::size_t idx = 0;
    for (const auto &row : t.rows)
    {
        CascadePath p;
        p.idx_tx_ris = idx;
        p.idx_ris_rx = idx;
        ++idx;
        p.label = row[0];
        p.power_db = csvns::parse_db(row[1], name + " power_db");
        p.delay_ns = csvns::parse_double(row[2], name + " delay_ns");
        p.aoa_rx = RxAngle(csvns::parse_double(row[3], name + " aoa_rx_deg"));
        p.phase_rad = csvns::parse_double(row[4], name + " phase_rad");
        out.push_back(std::move(p));
    }
    return out;
}

std::string padp_csv(const PADP &padp)
{
    std::ostringstream os;
    os << "pointing_deg,delay_ns,power_db\n";
    for (std::size_t i = 0; i < padp.num_pointings(); ++i)
        for (std::size_t b = 0; b < padp.power[i].size(); ++b)
            os << csvns::format_fixed(padp.pointing_deg(i), 1) << ','
               << csvns::format_fixed(padp.grid.bin_center_ns(b), 1) << ','
               << csvns::format_db_fixed(padp.power[i][b]) << '\n';
    return os.str();
}

PADP load_padp_csv(std::istream &is, const std::string &name)
{
    const auto t = csvns::read_table(is, name);
    t.require_header({"pointing_deg", "delay_ns", "power_db"});
    if (t.rows.empty())
        throw schema_error(name + ": no cells");

    std::vector<double> pointings, delays;
    for (const auto &row : t.rows)
    {
        const double p = csvns::parse_double(row[0], name + " pointing_deg");
        const double d = csvns::parse_double(row[1], name + " delay_ns");
        if (pointings.empty() || pointings.back() != p)
            pointings.push_back(p);
        if (pointings.size() == 1)
            delays.push_back(d);
    }
    if (pointings.size() < 1 || delays.empty())
        throw schema_error(name + ": malformed cell ordering");
    if (t.rows.size() != pointings.size() * delays.size())
        throw schema_error(name + ": cell count is not pointings x delays");

    PADP padp;
    padp.start_deg = pointings.front();
    padp.step_deg = pointings.size() > 1 ? pointings[1] - pointings[0] : 360.0;
    const double width = delays.size() > 1 ? delays[1] - delays[0] : delays[0] > 0 ? delays[0] : 2.5;
    padp.grid = DelayGrid(width, std::max<std::size_t>(delays.size(), 1));
    padp.power.assign(pointings.size(), std::vector<Db>(delays.size(), Db::no_power()));

    std::size_t r = 0;
    for (std::size_t i = 0; i < pointings.size(); ++i)
        for (std::size_t b = 0; b < delays.size(); ++b, ++r)
            padp.power[i][b] = csvns::parse_db(t.rows[r][2], name + " power_db");
    return padp;
}

std::string pattern_csv(const RadiationPatternTable &table)
{
    std::ostringstream os;
    os << "theta_out_deg,gain_db\n";
    for (std::size_t i = 0; i < table.theta_out_deg.size(); ++i)
        os << csvns::format_full(table.theta_out_deg[i]) << ','
           << csvns::format_db_fixed(table.gain_db[i]) << '\n';
    return os.str();
}

std::string extracted_csv(const std::vector<ExtractedPath> &paths)
{
    std::ostringstream os;
    os << "pointing_deg,delay_ns,power_db\n";
    for (const auto &p : paths)
        os << csvns::format_fixed(p.pointing_deg, 1) << ',' << csvns::format_fixed(p.delay_ns, 1) << ','
           << csvns::format_db_fixed(p.power_db) << '\n';
    return os.str();
}

} // namespace riscade
