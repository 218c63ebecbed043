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
//
// Command-line surface. Exit codes: 0 success, 1 I/O or parse failure,
// 2 validation-tolerance breach, 3 internal invariant failure.

#include "riscade/cascade.hpp"
#include "riscade/channel_synth.hpp"
#include "riscade/csv.hpp"
#include "riscade/errors.hpp"
#include "riscade/kernels.hpp"
#include "riscade/ris_pattern.hpp"
#include "riscade/scenario.hpp"
#include "riscade/sounding.hpp"
#include "riscade/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

using namespace riscade;

const ScenarioFile::Panel &need_panel(const ScenarioFile &sf)
{
    if (!sf.panel)
        throw parse_error("scenario: [panel] section required for this command");
    return *sf.panel;
}

SoundingConfig need_sounding(const ScenarioFile &sf)
{
    if (!sf.sounding)
        throw parse_error("scenario: [sounding] section required for this command");
    return *sf.sounding;
}

Codebook read_codebook_file(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw parse_error(path + ": cannot open");
    return Codebook::read(is);
}

std::ifstream open_input(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw parse_error(path + ": cannot open");
    return is;
}

// Full (theta_out, theta_in) gain table from a long-format CSV; every
// grid cell must be present.
FrisTable load_fris_grid_csv(const std::string &path)
{
    const auto t = csv::read_table_file(path);
    t.require_header({"theta_out_deg", "theta_in_deg", "f_ris_db"});

    FrisTable table;
    for (const auto &row : t.rows)
    {
        table.theta_out_deg.push_back(csv::parse_double(row[0], path + " theta_out_deg"));
        table.theta_in_deg.push_back(csv::parse_double(row[1], path + " theta_in_deg"));
    }
    auto dedupe = [](std::vector<double> &v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(table.theta_out_deg);
    dedupe(table.theta_in_deg);
    if (t.rows.size() != table.theta_out_deg.size() * table.theta_in_deg.size())
        throw schema_error(path + ": table must cover the full theta_out x theta_in grid");

    table.gain_db.assign(t.rows.size(), Db::no_power());
    auto index_of = [](const std::vector<double> &axis, double v) {
        return static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), v) - axis.begin());
    };
    for (const auto &row : t.rows)
    {
        const std::size_t io = index_of(table.theta_out_deg, csv::parse_double(row[0], "theta_out_deg"));
        const std::size_t ii = index_of(table.theta_in_deg, csv::parse_double(row[1], "theta_in_deg"));
        table.gain_db[io * table.theta_in_deg.size() + ii] = csv::parse_db(row[2], path + " f_ris_db");
    }
    table.interpolate = true;
    return table;
}

int run(int argc, char **argv)
{
    CLI::App app{"riscade - cascaded channel modeling and sounding simulation for RIS-assisted links"};
    app.require_subcommand(1);

    auto *cb_cmd = app.add_subcommand("codebook", "Generate an anomalous-reflection codebook");
    std::string cb_scenario, cb_out;
    double cb_in = 0.0, cb_target = 0.0;
    bool cb_continuous = false;
    cb_cmd->add_option("--scenario", cb_scenario, "Scenario file (needs [panel])")->required();
    cb_cmd->add_option("--theta-in", cb_in, "Incidence azimuth, RIS frame, deg")->required();
    cb_cmd->add_option("--theta-out", cb_target, "Target departure azimuth, deg")->required();
    cb_cmd->add_flag("--continuous", cb_continuous, "Skip phase quantization");
    cb_cmd->add_option("-o,--output", cb_out, "Output codebook file")->required();

    auto *pat_cmd = app.add_subcommand("pattern", "Tabulate the panel gain over departure angles");
    std::string pat_scenario, pat_codebook, pat_out;
    double pat_in = 0.0, pat_target = 0.0, pat_start = 0.5, pat_stop = 179.5, pat_step = 0.5;
    auto *pat_target_opt = pat_cmd->add_option("--theta-out-target", pat_target,
                                               "Generate an anomalous codebook for this target");
    pat_cmd->add_option("--scenario", pat_scenario, "Scenario file (needs [panel])")->required();
    pat_cmd->add_option("--theta-in", pat_in, "Incidence azimuth, RIS frame, deg")->required();
    pat_cmd->add_option("--codebook", pat_codebook, "Codebook file")->excludes(pat_target_opt);
    pat_cmd->add_option("--grid-start", pat_start, "First departure angle, deg");
    pat_cmd->add_option("--grid-stop", pat_stop, "Last departure angle, deg");
    pat_cmd->add_option("--grid-step", pat_step, "Grid step, deg");
    pat_cmd->add_option("-o,--output", pat_out, "Output CSV (theta_out_deg,gain_db)")->required();

    auto *syn_cmd = app.add_subcommand("synth", "Synthesize a sub-channel from the scenario");
    std::string syn_scenario, syn_side, syn_out;
    std::size_t syn_tx_index = 0;
    bool syn_gbsm = false;
    syn_cmd->add_option("--scenario", syn_scenario, "Scenario file")->required();
    syn_cmd->add_option("--side", syn_side, "tx-ris or ris-rx")
        ->check(CLI::IsMember({"tx-ris", "ris-rx"}))
        ->required();
    syn_cmd->add_flag("--gbsm", syn_gbsm, "Stochastic generation instead of geometric paths");
    syn_cmd->add_option("--tx-index", syn_tx_index, "Transmitter placement index (geometric mode)");
    syn_cmd->add_option("-o,--output", syn_out, "Output CSV")->required();

    auto *cas_cmd = app.add_subcommand("cascade", "Cascade two sub-channel CSVs");
    std::string cas_scenario, cas_sub1, cas_sub2, cas_fris_csv, cas_fris_codebook, cas_out;
    double cas_fris_db = 0.0, cas_tx_point = 0.0, cas_rx_point = 0.0;
    cas_cmd->add_option("--scenario", cas_scenario, "Scenario file")->required();
    cas_cmd->add_option("--sub1", cas_sub1, "Tx-RIS sub-channel CSV")->required();
    cas_cmd->add_option("--sub2", cas_sub2, "RIS-Rx sub-channel CSV")->required();
    auto *fris_csv_opt =
        cas_cmd->add_option("--fris-csv", cas_fris_csv, "Panel gain grid CSV (theta_out_deg,theta_in_deg,f_ris_db)");
    auto *fris_db_opt = cas_cmd->add_option("--fris-db", cas_fris_db, "Constant panel gain, dB");
    auto *fris_cb_opt = cas_cmd->add_option("--fris-codebook", cas_fris_codebook,
                                            "Codebook file, gain from the scenario panel");
    fris_csv_opt->excludes(fris_db_opt)->excludes(fris_cb_opt);
    fris_db_opt->excludes(fris_cb_opt);
    cas_cmd->add_option("--tx-pointing", cas_tx_point, "Tx antenna boresight, Tx frame, deg");
    cas_cmd->add_option("--rx-pointing", cas_rx_point, "Rx antenna boresight, Rx frame, deg");
    cas_cmd->add_option("-o,--output", cas_out, "Output CSV")->required();

    auto *snd_cmd = app.add_subcommand("sound", "Sound a synthesized channel and emit its PDP");
    std::string snd_scenario, snd_paths, snd_kind = "cascade", snd_out;
    snd_cmd->add_option("--scenario", snd_scenario, "Scenario file (needs [sounding])")->required();
    snd_cmd->add_option("--paths", snd_paths, "Input paths CSV")->required();
    snd_cmd->add_option("--kind", snd_kind, "cascade, ris-rx or tx-ris")
        ->check(CLI::IsMember({"cascade", "ris-rx", "tx-ris"}));
    snd_cmd->add_option("-o,--output", snd_out, "Output CSV (delay_ns,power_db)")->required();

    auto *scan_cmd = app.add_subcommand("scan", "Rotational horn scan of a synthesized channel");
    std::string scan_scenario, scan_input, scan_kind = "ris-rx", scan_out;
    scan_cmd->add_option("--scenario", scan_scenario,
                         "Scenario file (needs [sounding], [scan], [antennas])")
        ->required();
    scan_cmd->add_option("--paths", scan_input, "Input paths CSV")->required();
    scan_cmd->add_option("--kind", scan_kind, "ris-rx or cascade")
        ->check(CLI::IsMember({"ris-rx", "cascade"}));
    scan_cmd->add_option("-o,--output", scan_out, "Output PADP CSV")->required();

    auto *ext_cmd = app.add_subcommand("extract", "Extract paths from a PADP CSV");
    std::string ext_padp, ext_out;
    double ext_threshold = 25.0;
    std::size_t ext_min_sep = 2;
    ext_cmd->add_option("--padp", ext_padp, "PADP CSV")->required();
    ext_cmd->add_option("--threshold-db", ext_threshold, "Depth below the global maximum, dB");
    ext_cmd->add_option("--min-sep", ext_min_sep, "Exclusion radius, cells");
    ext_cmd->add_option("-o,--output", ext_out, "Output CSV")->required();

    auto *val_cmd = app.add_subcommand("validate", "Rebuild the cascaded-power comparison table");
    std::string val_tables, val_out;
    double val_tolerance = 7.0;
    bool val_as_printed = true;
    val_cmd->add_option("--tables", val_tables, "Directory with table2/table3/fris/measured CSVs")
        ->required();
    val_cmd->add_option("--tolerance-db", val_tolerance, "Gate on max |dP|, dB");
    val_cmd->add_flag("--table-iv-as-printed,!--no-table-iv-as-printed", val_as_printed,
                      "Use the printed comparison-table C/D power pairing (default on)");
    val_cmd->add_option("-o,--output", val_out, "Output CSV");

    auto *ker_cmd = app.add_subcommand("kernels", "Show the arithmetic backends");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (cb_cmd->parsed())
    {
        const auto sf = load_scenario(cb_scenario);
        const RISPanel &panel = need_panel(sf).panel;
        const Codebook cb = cb_continuous
                                ? anomalous_phase_profile(panel, RisAngle(cb_in), RisAngle(cb_target))
                                : generate_anomalous_codebook(panel, RisAngle(cb_in), RisAngle(cb_target));
        std::ostringstream os;
        cb.write(os);
        csv::write_file_atomic(cb_out, os.str());
        std::cout << "wrote " << cb.rows() << "x" << cb.cols() << " codebook to " << cb_out << "\n";
    }
    else if (pat_cmd->parsed())
    {
        const auto sf = load_scenario(pat_scenario);
        const auto &panel = need_panel(sf);
        Codebook cb;
        if (!pat_codebook.empty())
            cb = read_codebook_file(pat_codebook);
        else if (pat_target_opt->count() > 0)
            cb = generate_anomalous_codebook(panel.panel, RisAngle(pat_in), RisAngle(pat_target));
        else
            throw parse_error("pattern: pass --codebook or --theta-out-target");
        if (!(pat_step > 0.0) || pat_stop < pat_start)
            throw parse_error("pattern: bad grid");
        std::vector<RisAngle> grid;
        for (double a = pat_start; a <= pat_stop + 1e-9; a += pat_step)
            grid.emplace_back(a);
        auto table = pattern_table(panel.panel, cb, RisAngle(pat_in), grid);
        if (panel.loss_db.value() != 0.0)
            for (auto &g : table.gain_db)
                if (!g.is_no_power())
                    g -= panel.loss_db;
        csv::write_file_atomic(pat_out, pattern_csv(table));
        std::cout << "wrote " << table.theta_out_deg.size() << " samples to " << pat_out << "\n";
    }
    else if (syn_cmd->parsed())
    {
        const auto sf = load_scenario(syn_scenario);
        const Db refl = sf.cascade ? sf.cascade->reflection_loss_db : Db(6.0);
        if (syn_gbsm && !sf.gbsm)
            throw parse_error("synth: --gbsm needs a [gbsm] section in the scenario");
        std::string content;
        if (syn_side == "tx-ris")
        {
            const TxRisChannel sub = syn_gbsm
                                         ? gbsm_generate<Side::tx_ris>(*sf.gbsm)
                                         : geometric_paths<Side::tx_ris>(sf.geometry_for_tx(syn_tx_index), refl);
            content = tx_ris_csv(sub);
        }
        else
        {
            const RisRxChannel sub = syn_gbsm
                                         ? gbsm_generate<Side::ris_rx>(*sf.gbsm)
                                         : geometric_paths<Side::ris_rx>(sf.geometry_for_tx(syn_tx_index), refl);
            content = ris_rx_csv(sub);
        }
        csv::write_file_atomic(syn_out, content);
        std::cout << "wrote " << syn_out << "\n";
    }
    else if (cas_cmd->parsed())
    {
        const auto sf = load_scenario(cas_scenario);
        auto is1 = open_input(cas_sub1);
        auto is2 = open_input(cas_sub2);
        const TxRisChannel sub1 = load_tx_ris_csv(is1, cas_sub1);
        const RisRxChannel sub2 = load_ris_rx_csv(is2, cas_sub2);

        FrisFn fris;
        if (fris_csv_opt->count() > 0)
        {
            const FrisTable table = load_fris_grid_csv(cas_fris_csv);
            fris = [table](RisAngle out, RisAngle in) { return table.at(out, in); };
        }
        else if (fris_db_opt->count() > 0)
            fris = make_fris_constant(Db(cas_fris_db));
        else if (fris_cb_opt->count() > 0)
            fris = make_fris(need_panel(sf).panel, read_codebook_file(cas_fris_codebook),
                             -need_panel(sf).loss_db);
        else
            throw parse_error("cascade: pass one of --fris-csv, --fris-db, --fris-codebook");

        AntennaPattern tx_pat = sf.antennas ? sf.antennas->tx : AntennaPattern::isotropic();
        AntennaPattern rx_pat = sf.antennas ? sf.antennas->rx : AntennaPattern::isotropic();
        tx_pat = tx_pat.pointed_at(PlanarAngle(cas_tx_point));
        rx_pat = rx_pat.pointed_at(PlanarAngle(cas_rx_point));
        const ArrayElementOffset tx_off = sf.cascade ? sf.cascade->tx_offset : ArrayElementOffset();
        const ArrayElementOffset rx_off = sf.cascade ? sf.cascade->rx_offset : ArrayElementOffset();

        const auto paths = cascade_direct(sub1, sub2, fris, tx_pat, rx_pat, tx_off, rx_off);
        csv::write_file_atomic(cas_out, cascade_csv(paths));
        std::cout << "wrote " << paths.size() << " cascade paths to " << cas_out << "\n";
    }
    else if (snd_cmd->parsed())
    {
        const auto sf = load_scenario(snd_scenario);
        const SoundingConfig cfg = need_sounding(sf);
        auto is = open_input(snd_paths);
        std::vector<std::complex<double>> cir;
        const DelayGrid grid = cfg.grid();
        auto place = [&](Db power, double delay_ns, double phase) {
            const std::size_t bin = delay_to_bin(delay_ns, grid);
            if (cir.size() <= bin)
                cir.resize(bin + 1, {0.0, 0.0});
            if (power.is_no_power())
                return;
            const double amp = amplitude_from_db(power);
            cir[bin] += std::complex<double>(amp * std::cos(phase), amp * std::sin(phase));
        };
        if (snd_kind == "cascade")
            for (const auto &p : load_cascade_csv(is, snd_paths))
                place(p.power_db, p.delay_ns, p.phase_rad);
        else if (snd_kind == "ris-rx")
            for (const auto &p : load_ris_rx_csv(is, snd_paths).paths)
                place(p.power_db, p.delay_ns, p.phase_rad);
        else
            for (const auto &p : load_tx_ris_csv(is, snd_paths).paths)
                place(p.power_db, p.delay_ns, p.phase_rad);

        const auto est = sound_channel(cir, cfg, sf.seed);
        const auto pdp = cir_to_pdp(std::span<const std::complex<double>>(est.data(), cir.size()));
        std::ostringstream os;
        os << "delay_ns,power_db\n";
        for (std::size_t b = 0; b < pdp.size(); ++b)
            os << csv::format_fixed(grid.bin_center_ns(b), 1) << ',' << csv::format_db_fixed(pdp[b])
               << '\n';
        csv::write_file_atomic(snd_out, os.str());
        std::cout << "wrote " << pdp.size() << " delay bins to " << snd_out << "\n";
    }
    else if (scan_cmd->parsed())
    {
        const auto sf = load_scenario(scan_scenario);
        const SoundingConfig cfg = need_sounding(sf);
        if (!sf.antennas)
            throw parse_error("scan: [antennas] section required (rx horn)");
        const ScenarioFile::Scan sc = sf.scan ? *sf.scan : ScenarioFile::Scan{};
        auto is = open_input(scan_input);
        std::vector<ScanPath> paths;
        if (scan_kind == "ris-rx")
            paths = scan_paths(load_ris_rx_csv(is, scan_input));
        else
            paths = scan_paths(load_cascade_csv(is, scan_input));
        const PADP padp = rotational_scan(paths, sf.antennas->rx, sc.step_deg, sc.span_deg, cfg, sf.seed);
        csv::write_file_atomic(scan_out, padp_csv(padp));
        std::cout << "wrote " << padp.num_pointings() << " pointings to " << scan_out << "\n";
    }
    else if (ext_cmd->parsed())
    {
        auto is = open_input(ext_padp);
        const PADP padp = load_padp_csv(is, ext_padp);
        const auto paths = extract_paths(padp, Db(ext_threshold), ext_min_sep);
        csv::write_file_atomic(ext_out, extracted_csv(paths));
        std::cout << "extracted " << paths.size() << " paths to " << ext_out << "\n";
    }
    else if (val_cmd->parsed())
    {
        const auto tables = load_measured_tables(val_tables);
        const auto report = build_validation_table(tables, val_as_printed);
        std::cout << validation_text(report);
        if (!val_out.empty())
            csv::write_file_atomic(val_out, validation_csv(report));
        if (report.max_abs_delta_p.value() > val_tolerance)
            throw tolerance_error("validate: max |dP| = " + csv::format_db_fixed(report.max_abs_delta_p) +
                                  " dB exceeds the " + csv::format_fixed(val_tolerance, 2) + " dB gate");
    }
    else if (ker_cmd->parsed())
    {
        std::cout << "active: " << kernels::active().name << "\navailable:";
        for (const auto *o : kernels::available())
            std::cout << ' ' << o->name;
        std::cout << "\n";
    }

    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    try
    {
        return run(argc, argv);
    }
    catch (const riscade::tolerance_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const riscade::parse_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const riscade::schema_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const riscade::lookup_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const riscade::aliasing_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const riscade::dimension_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::domain_error &e)
    {
        // Invalid values in user-supplied inputs.
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::out_of_range &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
