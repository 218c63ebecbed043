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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riscade/csv.hpp"
#include "riscade/errors.hpp"
#include "riscade/scenario.hpp"
#include "riscade/validation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

using namespace riscade;

// Test binaries run from the build tree; the bundled dataset is addressed
// relative to this source file.
#ifndef RISCADE_DATA_DIR
#define RISCADE_DATA_DIR "data"
#endif

namespace
{
const std::string data_dir = RISCADE_DATA_DIR;
}

TEST_CASE("bundled scenario loads with the measurement layout")
{
    const ScenarioFile sf = load_scenario(data_dir + "/factory_paper.scenario");
    REQUIRE(sf.geometry.has_value());
    REQUIRE(sf.geometry->tx.size() == 2);

    auto polar = [&](Vec2 p) {
        return std::pair<double, double>{std::hypot(p.x, p.y),
                                         PlanarAngle(std::atan2(p.y, p.x) * 180.0 / 3.14159265358979323846)
                                             .degrees()};
    };
    auto [d1, a1] = polar(sf.geometry->tx[0]);
    CHECK(d1 == doctest::Approx(5.0));
    CHECK(a1 == doctest::Approx(80.0));
    auto [d2, a2] = polar(sf.geometry->tx[1]);
    CHECK(d2 == doctest::Approx(3.0));
    CHECK(a2 == doctest::Approx(60.0));
    auto [dr, ar] = polar(sf.geometry->rx);
    CHECK(dr == doctest::Approx(10.0));
    CHECK(ar == doctest::Approx(90.0));
    REQUIRE(sf.geometry->scatterers.size() == 1);
    auto [ds, as] = polar(sf.geometry->scatterers[0]);
    CHECK(as == doctest::Approx(125.0));

    REQUIRE(sf.panel.has_value());
    CHECK(sf.panel->panel.rows == 32);
    CHECK(sf.panel->panel.phase_bits == 1);
    REQUIRE(sf.sounding.has_value());
    CHECK(sf.sounding->sequence_length() == 511);
    CHECK(sf.sounding->noise_floor_db.is_no_power());
    REQUIRE(sf.scan.has_value());
    CHECK(sf.scan->step_deg == 5.0);

    const ScenarioGeometry g = sf.geometry_for_tx(1);
    CHECK(std::hypot(g.tx.x, g.tx.y) == doctest::Approx(3.0));
    CHECK_THROWS_AS(static_cast<void>(sf.geometry_for_tx(2)), std::out_of_range);
}

TEST_CASE("scenario parse errors carry location and field")
{
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_scenario(empty, "empty"), parse_error);

    std::istringstream neg("[geometry]\nris = xy 0 0 m\nrx = polar 90 deg -10 m\ntx = xy 1 1 m\n");
    CHECK_THROWS_WITH_AS(parse_scenario(neg, "neg"),
                         doctest::Contains("distance must be > 0"), parse_error);

    std::istringstream unknown("[geometry]\nris = xy 0 0 m\nfoo = 1\n");
    CHECK_THROWS_WITH_AS(parse_scenario(unknown, "unk"), doctest::Contains("unknown key 'foo'"),
                         parse_error);

    std::istringstream dup("[panel]\nrows = 8\nrows = 16\n");
    CHECK_THROWS_WITH_AS(parse_scenario(dup, "dup"), doctest::Contains("duplicate key"), parse_error);

    std::istringstream badunit("[gbsm]\ndelay_scale = 50 s\n");
    CHECK_THROWS_AS(parse_scenario(badunit, "unit"), parse_error);

    std::istringstream badsec("[warp]\nx = 1\n");
    CHECK_THROWS_WITH_AS(parse_scenario(badsec, "sec"), doctest::Contains("unknown section"), parse_error);
}

TEST_CASE("measured tables load with exact values")
{
    const MeasuredTables t = load_measured_tables(data_dir + "/paper");
    REQUIRE(t.tx_ris.paths.size() == 2);
    CHECK(t.tx_ris.paths[0].label == "1");
    CHECK(t.tx_ris.paths[0].power_db.value() == -74.64);
    CHECK(t.tx_ris.paths[0].delay_ns == 17.5);
    CHECK(t.tx_ris.paths[0].aoa.degrees() == 80.0);

    REQUIRE(t.ris_rx.paths.size() == 4);
    CHECK(t.ris_rx.paths[0].label == "A");
    CHECK(t.ris_rx.paths[0].power_db.value() == -78.46);
    CHECK(t.ris_rx.paths[0].aod.degrees() == 90.0);
    CHECK(t.ris_rx.paths[0].aoa.degrees() == 90.0);

    CHECK(t.f_ris_db.at("1-A").value() == 46.71);
    CHECK(t.measured.at("2-D").power_db.value() == -134.53);
    REQUIRE(t.measured.at("2-D").power_no_ris_db.has_value());
    CHECK(t.measured.at("2-D").power_no_ris_db->value() == -139.08);
}

TEST_CASE("table loaders enforce their schemas")
{
    std::istringstream dup("label,power_db,delay_ns,aoa_ris_deg\n1,-74.64,17.5,80\n1,-70.21,10.0,60\n");
    CHECK_THROWS_AS(load_table2(dup, "dup"), schema_error);

    std::istringstream missing("label,power_db,delay_ns\n1,-74.64,17.5\n");
    CHECK_THROWS_AS(load_table2(missing, "missing"), schema_error);

    std::istringstream extra("label,power_db,delay_ns,aoa_ris_deg,bogus\n1,-74.64,17.5,80,0\n");
    CHECK_THROWS_AS(load_table2(extra, "extra"), schema_error);

    std::istringstream badnum("pair_label,f_ris_db\n1-A,abc\n");
    CHECK_THROWS_AS(load_fris(badnum, "badnum"), parse_error);
}

TEST_CASE("validation table matches the printed comparison table")
{
    const MeasuredTables t = load_measured_tables(data_dir + "/paper");
    const ValidationReport report = build_validation_table(t, true);
    REQUIRE(report.records.size() == 8);

    auto fmt = [](Db v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v.value());
        return std::string(buf);
    };
    auto rec = [&](const std::string &label) -> const ValidationRecord & {
        for (const auto &r : report.records)
            if (r.label == label)
                return r;
        REQUIRE(false);
        return report.records.front();
    };

    const char *expect[][3] = {{"1-A", "-106.39", "1.15"},  {"2-A", "-101.40", "4.74"},
                               {"1-B", "-105.58", "6.60"},  {"2-B", "-110.88", "-5.07"},
                               {"1-C", "-128.94", "-0.11"}, {"2-C", "-118.56", "-5.09"},
                               {"1-D", "-131.54", "0.65"},  {"2-D", "-133.90", "0.63"}};
    for (const auto &e : expect)
    {
        CHECK(fmt(rec(e[0]).p_conv) == e[1]);
        CHECK(fmt(rec(e[0]).delta_p) == e[2]);
    }
    CHECK(fmt(report.max_abs_delta_p) == "6.60");
    CHECK(fmt(report.min_abs_delta_p) == "0.11");
    CHECK(report.records[0].label == "1-A"); // rx-major ordering
    CHECK(report.records[1].label == "2-A");
    REQUIRE(!report.warnings.empty());

    // The record identities hold by construction.
    for (const auto &r : report.records)
    {
        CHECK(r.p_conv.value() == doctest::Approx((r.p_n1 + r.p_n2 + r.f_ris).value()).epsilon(1e-15));
        CHECK(r.delta_p.value() == doctest::Approx((r.p_conv - r.p_measured).value()).epsilon(1e-15));
    }
}

TEST_CASE("sub-channel table pairing flips C and D back")
{
    const MeasuredTables t = load_measured_tables(data_dir + "/paper");
    const ValidationReport report = build_validation_table(t, false);
    for (const auto &r : report.records)
    {
        if (r.label == "1-C")
            CHECK(r.p_n2.value() == -95.59);
        if (r.label == "1-D")
            CHECK(r.p_n2.value() == -93.28);
    }
    CHECK(report.warnings.empty());
}

TEST_CASE("zero panel gain collapses the cascade to the power sum")
{
    MeasuredTables t = load_measured_tables(data_dir + "/paper");
    for (auto &[label, gain] : t.f_ris_db)
        gain = Db(0.0);
    const ValidationReport report = build_validation_table(t, true);
    for (const auto &r : report.records)
        CHECK(r.p_conv.value() == doctest::Approx((r.p_n1 + r.p_n2).value()).epsilon(1e-15));
}

TEST_CASE("missing pair entries are named")
{
    MeasuredTables t = load_measured_tables(data_dir + "/paper");
    t.f_ris_db.erase("2-B");
    CHECK_THROWS_WITH_AS(build_validation_table(t, true), doctest::Contains("2-B"), schema_error);

    MeasuredTables t2 = load_measured_tables(data_dir + "/paper");
    t2.measured.erase("1-D");
    CHECK_THROWS_WITH_AS(build_validation_table(t2, true), doctest::Contains("1-D"), schema_error);
}

TEST_CASE("validation CSV round trip at table precision")
{
    const MeasuredTables t = load_measured_tables(data_dir + "/paper");
    const ValidationReport report = build_validation_table(t, true);
    const std::string csv_text = validation_csv(report);

    std::istringstream is(csv_text);
    const auto table = csv::read_table(is, "report");
    REQUIRE(table.rows.size() == report.records.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i)
    {
        CHECK(table.rows[i][0] == report.records[i].label);
        CHECK(csv::parse_double(table.rows[i][4], "p_conv") ==
              doctest::Approx(report.records[i].p_conv.value()).epsilon(5e-3));
        // Re-rendering the parsed values reproduces the text exactly.
        CHECK(csv::format_fixed(csv::parse_double(table.rows[i][7], "dp"), 2) == table.rows[i][7]);
    }
}

TEST_CASE("sub-channel CSV round trips bit-exactly")
{
    const ScenarioFile sf = load_scenario(data_dir + "/factory_paper.scenario");
    const auto sub = geometric_paths<Side::ris_rx>(sf.geometry_for_tx(0), Db(6.0));
    const std::string text = ris_rx_csv(sub);
    std::istringstream is(text);
    const auto back = load_ris_rx_csv(is, "round");
    REQUIRE(back.paths.size() == sub.paths.size());
    for (std::size_t i = 0; i < sub.paths.size(); ++i)
    {
        CHECK(back.paths[i].power_db.value() == sub.paths[i].power_db.value());
        CHECK(back.paths[i].delay_ns == sub.paths[i].delay_ns);
        CHECK(back.paths[i].aod.degrees() == sub.paths[i].aod.degrees());
        CHECK(back.paths[i].aoa.degrees() == sub.paths[i].aoa.degrees());
        CHECK(back.paths[i].phase_rad == sub.paths[i].phase_rad);
    }
}

TEST_CASE("cascade CSV round trips, including the no-power sentinel")
{
    std::vector<CascadePath> paths(2);
    paths[0].label = "1-A";
    paths[0].power_db = Db(-106.3912345);
    paths[0].delay_ns = 50.0;
    paths[0].aoa_rx = RxAngle(90.0);
    paths[0].phase_rad = 1.25;
    paths[1].label = "null";
    paths[1].power_db = Db::no_power();
    paths[1].delay_ns = 60.0;
    paths[1].aoa_rx = RxAngle(20.0);

    const std::string text = cascade_csv(paths);
    std::istringstream is(text);
    const auto back = load_cascade_csv(is, "cascade");
    REQUIRE(back.size() == 2);
    CHECK(back[0].power_db.value() == paths[0].power_db.value());
    CHECK(back[0].delay_ns == paths[0].delay_ns);
    CHECK(back[0].aoa_rx.degrees() == paths[0].aoa_rx.degrees());
    CHECK(back[0].phase_rad == paths[0].phase_rad);
    CHECK(back[1].power_db.is_no_power());
}

TEST_CASE("PADP CSV round trip")
{
    PADP padp;
    padp.start_deg = 0.0;
    padp.step_deg = 5.0;
    padp.grid = DelayGrid(2.5, 4);
    padp.power.assign(3, std::vector<Db>(4, Db::no_power()));
    padp.power[1][2] = Db(-42.25);
    padp.power[2][0] = Db(-60.5);

    const std::string text = padp_csv(padp);
    std::istringstream is(text);
    const PADP back = load_padp_csv(is, "padp");
    REQUIRE(back.num_pointings() == 3);
    REQUIRE(back.power[0].size() == 4);
    CHECK(back.step_deg == doctest::Approx(5.0));
    CHECK(back.grid.bin_width_ns == doctest::Approx(2.5));
    CHECK(back.power[1][2].value() == doctest::Approx(-42.25));
    CHECK(back.power[0][0].is_no_power());
    CHECK(back.power[2][0].value() == doctest::Approx(-60.5));
}

TEST_CASE("atomic write replaces the target completely")
{
    const std::string path = "riscade_atomic_test.csv";
    csv::write_file_atomic(path, "a,b\n1,2\n");
    csv::write_file_atomic(path, "a,b\n3,4\n");
    const auto t = csv::read_table_file(path);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == "3");
    std::remove(path.c_str());
}
