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

#include "riscade/scenario.hpp"

#include "riscade/errors.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace riscade
{

namespace
{

struct Cursor
{
    std::string file;
    std::size_t line = 0;

    [[nodiscard]] std::string where() const { return file + ":" + std::to_string(line); }
    [[noreturn]] void fail(const std::string &msg) const { throw parse_error(where() + ": " + msg); }
};

std::string trim(const std::string &s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string &s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t)
        out.push_back(t);
    return out;
}

double num(const Cursor &at, const std::string &tok, const std::string &field)
{
    try
    {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(tok);
        return v;
    }
    catch (const std::exception &)
    {
        at.fail("field '" + field + "': '" + tok + "' is not a number");
    }
}

// "<value> <unit>" with an exact unit suffix.
double with_unit(const Cursor &at, const std::vector<std::string> &t, const std::string &field,
                 const std::string &unit)
{
    if (t.size() != 2 || t[1] != unit)
        at.fail("field '" + field + "': expected '<value> " + unit + "'");
    return num(at, t[0], field);
}

double freq_hz(const Cursor &at, const std::vector<std::string> &t, const std::string &field)
{
    if (t.size() != 2)
        at.fail("field '" + field + "': expected '<value> GHz|MHz|Hz'");
    const double v = num(at, t[0], field);
    if (t[1] == "GHz")
        return v * 1e9;
    if (t[1] == "MHz")
        return v * 1e6;
    if (t[1] == "Hz")
        return v;
    at.fail("field '" + field + "': unknown frequency unit '" + t[1] + "'");
}

// "xy <x> <y> m" or "polar <angle> deg <dist> m" relative to the RIS.
Vec2 position(const Cursor &at, const std::vector<std::string> &t, const std::string &field, Vec2 ris)
{
    if (t.size() == 4 && t[0] == "xy" && t[3] == "m")
        return {num(at, t[1], field), num(at, t[2], field)};
    if (t.size() == 5 && t[0] == "polar" && t[2] == "deg" && t[4] == "m")
    {
        const double ang = num(at, t[1], field) * std::numbers::pi / 180.0;
        const double d = num(at, t[3], field);
        if (!(d > 0.0))
            at.fail("field '" + field + "': distance must be > 0");
        return {ris.x + d * std::cos(ang), ris.y + d * std::sin(ang)};
    }
    at.fail("field '" + field + "': expected 'xy <x> <y> m' or 'polar <angle> deg <dist> m'");
}

AntennaPattern antenna(const Cursor &at, const std::vector<std::string> &t, const std::string &field)
{
    if (t.size() >= 3 && t[0] == "omni" && t[2] == "dBi")
        return AntennaPattern::omni(Db(num(at, t[1], field)));
    if (t.size() >= 3 && t[0] == "isotropic" && t[2] == "dBi")
        return AntennaPattern::isotropic(Db(num(at, t[1], field)));
    if (t.size() >= 6 && t[0] == "horn" && t[2] == "dBi" && t[3] == "hpbw" && t[5] == "deg")
    {
        Db floor_rel(-20.0);
        if (t.size() == 9 && t[6] == "floor" && t[8] == "dB")
            floor_rel = Db(num(at, t[7], field));
        else if (t.size() != 6)
            at.fail("field '" + field + "': trailing tokens after horn spec");
        return AntennaPattern::horn(Db(num(at, t[1], field)), num(at, t[4], field), PlanarAngle(0.0),
                                    floor_rel);
    }
    at.fail("field '" + field +
            "': expected 'horn <g> dBi hpbw <w> deg [floor <f> dB]' | 'omni <g> dBi' | 'isotropic <g> dBi'");
}

} // namespace

ScenarioGeometry ScenarioFile::geometry_for_tx(std::size_t tx_index) const
{
    if (!geometry)
        throw std::domain_error("scenario: [geometry] section required but absent");
    if (tx_index >= geometry->tx.size())
        throw std::out_of_range("scenario: tx index " + std::to_string(tx_index) + " out of range (" +
                                std::to_string(geometry->tx.size()) + " transmitters)");
    ScenarioGeometry g;
    g.tx = geometry->tx[tx_index];
    g.ris = geometry->ris;
    g.rx = geometry->rx;
    g.scatterers = geometry->scatterers;
    g.height_m = geometry->height_m;
    g.validate();
    return g;
}

ScenarioFile parse_scenario(std::istream &is, const std::string &name)
{
    ScenarioFile sf;
    Cursor at{name, 0};

    std::string section;
    std::set<std::string> seen; // "section.key" for duplicate detection
    bool have_ris = false, have_rx = false;

    // Deferred polar positions: they resolve against the RIS origin, which
    // may appear later in the section.
    struct Pending
    {
        std::string field;
        std::vector<std::string> toks;
        std::size_t line;
    };
    std::vector<Pending> pending_positions;

    std::string raw;
    while (std::getline(is, raw))
    {
        ++at.line;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[')
        {
            if (line.back() != ']')
                at.fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            static const std::set<std::string> known = {"geometry", "panel",   "antennas",
                                                        "sounding", "scan",    "cascade",
                                                        "gbsm"};
            if (!known.count(section))
                at.fail("unknown section [" + section + "]");
            if (section == "geometry" && !sf.geometry)
                sf.geometry.emplace();
            else if (section == "panel" && !sf.panel)
                sf.panel.emplace();
            else if (section == "antennas" && !sf.antennas)
                sf.antennas.emplace();
            else if (section == "sounding" && !sf.sounding)
                sf.sounding.emplace();
            else if (section == "scan" && !sf.scan)
                sf.scan.emplace();
            else if (section == "cascade" && !sf.cascade)
                sf.cascade.emplace();
            else if (section == "gbsm" && !sf.gbsm)
                sf.gbsm.emplace();
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            at.fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            at.fail("expected 'key = value'");
        const auto t = tokens(value);

        const bool repeatable = (section == "geometry" && (key == "tx" || key == "scatterer"));
        if (!repeatable && !seen.insert(section + "." + key).second)
            at.fail("duplicate key '" + key + "'");

        if (section.empty())
        {
            if (key == "seed")
                sf.seed = static_cast<std::uint64_t>(num(at, value, key));
            else
                at.fail("unknown top-level key '" + key + "' (expected 'seed' or a [section])");
            continue;
        }

        if (section == "geometry")
        {
            auto &g = *sf.geometry;
            if (key == "ris")
            {
                g.ris = position(at, t, key, {0.0, 0.0});
                have_ris = true;
            }
            else if (key == "rx" || key == "tx" || key == "scatterer")
            {
                // Resolve after the whole section is read so 'polar' forms
                // can reference a later-defined RIS origin.
                pending_positions.push_back({key, t, at.line});
                have_rx = have_rx || (key == "rx");
            }
            else if (key == "height")
            {
                g.height_m = with_unit(at, t, key, "m");
                if (!(g.height_m > 0.0))
                    at.fail("field 'height': must be > 0");
            }
            else
                at.fail("unknown key '" + key + "' in [geometry]");
        }
        else if (section == "panel")
        {
            auto &p = *sf.panel;
            if (key == "rows")
                p.panel.rows = static_cast<std::size_t>(num(at, value, key));
            else if (key == "cols")
                p.panel.cols = static_cast<std::size_t>(num(at, value, key));
            else if (key == "spacing")
                p.panel.element_spacing_wavelengths = with_unit(at, t, key, "wl");
            else if (key == "phase_bits")
                p.panel.phase_bits = static_cast<unsigned>(num(at, value, key));
            else if (key == "center_freq")
                p.panel.center_freq_hz = freq_hz(at, t, key);
            else if (key == "element_exponent")
                p.panel.element_pattern_exponent = num(at, value, key);
            else if (key == "panel_loss")
                p.loss_db = Db(with_unit(at, t, key, "dB"));
            else
                at.fail("unknown key '" + key + "' in [panel]");
        }
        else if (section == "antennas")
        {
            auto &a = *sf.antennas;
            if (key == "tx")
                a.tx = antenna(at, t, key);
            else if (key == "rx")
                a.rx = antenna(at, t, key);
            else if (key == "ris_probe")
                a.ris_probe = antenna(at, t, key);
            else
                at.fail("unknown key '" + key + "' in [antennas]");
        }
        else if (section == "sounding")
        {
            auto &s = *sf.sounding;
            if (key == "pn_order")
                s.pn_order = static_cast<unsigned>(num(at, value, key));
            else if (key == "chip_rate")
                s.chip_rate_hz = freq_hz(at, t, key);
            else if (key == "carrier")
                s.carrier_hz = freq_hz(at, t, key);
            else if (key == "tx_power")
                s.tx_power_dbm = Db(with_unit(at, t, key, "dBm"));
            else if (key == "noise_floor")
                s.noise_floor_db = (value == "off") ? Db::no_power() : Db(with_unit(at, t, key, "dB"));
            else
                at.fail("unknown key '" + key + "' in [sounding]");
        }
        else if (section == "scan")
        {
            auto &s = *sf.scan;
            if (key == "step")
                s.step_deg = with_unit(at, t, key, "deg");
            else if (key == "span")
                s.span_deg = with_unit(at, t, key, "deg");
            else
                at.fail("unknown key '" + key + "' in [scan]");
        }
        else if (section == "cascade")
        {
            auto &c = *sf.cascade;
            if (key == "reflection_loss")
                c.reflection_loss_db = Db(with_unit(at, t, key, "dB"));
            else if (key == "tx_offset")
                c.tx_offset = ArrayElementOffset(with_unit(at, t, key, "wl"));
            else if (key == "rx_offset")
                c.rx_offset = ArrayElementOffset(with_unit(at, t, key, "wl"));
            else
                at.fail("unknown key '" + key + "' in [cascade]");
        }
        else if (section == "gbsm")
        {
            auto &g = *sf.gbsm;
            if (key == "clusters")
                g.num_clusters = static_cast<std::size_t>(num(at, value, key));
            else if (key == "paths_per_cluster")
                g.paths_per_cluster = static_cast<std::size_t>(num(at, value, key));
            else if (key == "delay_scale")
                g.delay_scale_ns = with_unit(at, t, key, "ns");
            else if (key == "angle_spread")
                g.angle_spread_deg = with_unit(at, t, key, "deg");
            else if (key == "power_decay")
                g.per_cluster_power_decay_db = Db(with_unit(at, t, key, "dB"));
            else
                at.fail("unknown key '" + key + "' in [gbsm]");
        }
    }

    if (at.line == 0)
        throw parse_error(name + ": empty file");

    if (sf.geometry)
    {
        Cursor end{name, at.line};
        for (const auto &p : pending_positions)
        {
            Cursor here{name, p.line};
            const Vec2 v = position(here, p.toks, p.field, sf.geometry->ris);
            if (p.field == "rx")
                sf.geometry->rx = v;
            else if (p.field == "tx")
                sf.geometry->tx.push_back(v);
            else
                sf.geometry->scatterers.push_back(v);
        }
        if (!have_ris)
            end.fail("[geometry] is missing 'ris'");
        if (!have_rx)
            end.fail("[geometry] is missing 'rx'");
        if (sf.geometry->tx.empty())
            end.fail("[geometry] is missing 'tx'");
    }
    if (sf.panel)
        sf.panel->panel.validate();
    if (sf.sounding)
        sf.sounding->validate();
    if (sf.gbsm)
    {
        sf.gbsm->seed = sf.seed;
        sf.gbsm->validate();
    }
    if (sf.scan && (!(sf.scan->step_deg > 0.0) || !(sf.scan->span_deg > 0.0)))
        throw parse_error(name + ": [scan] step and span must be > 0");

    return sf;
}

ScenarioFile load_scenario(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw parse_error(path + ": cannot open");
    return parse_scenario(is, path);
}

} // namespace riscade
