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
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.
//
//   usage: acceptance [--data <dir>] [--cli <path-to-riscade-binary>]

#include "riscade/cascade.hpp"
#include "riscade/channel_synth.hpp"
#include "riscade/csv.hpp"
#include "riscade/ris_pattern.hpp"
#include "riscade/scenario.hpp"
#include "riscade/sounding.hpp"
#include "riscade/validation.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/wait.h>
#endif

using namespace riscade;

namespace
{

constexpr double pi = std::numbers::pi;

std::string g_data = "data";
std::string g_cli;

struct Outcome
{
    bool pass = true;
    std::string detail;

    void fail(const std::string &why)
    {
        pass = false;
        if (!detail.empty())
            detail += "; ";
        detail += why;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt2(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// ---- criterion 1: comparison-table reproduction -------------------------

Outcome criterion1()
{
    Outcome out;
    const auto t0 = Clock::now();

    const MeasuredTables tables = load_measured_tables(g_data + "/paper");
    const ValidationReport report = build_validation_table(tables, true);

    const char *expect[][2] = {{"1-A", "1.15"},  {"2-A", "4.74"}, {"1-B", "6.60"},  {"2-B", "-5.07"},
                               {"1-C", "-0.11"}, {"2-C", "-5.09"}, {"1-D", "0.65"}, {"2-D", "0.63"}};
    const char *expect_conv[] = {"-106.39", "-101.40", "-105.58", "-110.88",
                                 "-128.94", "-118.56", "-131.54", "-133.90"};

    if (report.records.size() != 8)
        out.fail("expected 8 records, got " + std::to_string(report.records.size()));
    for (std::size_t i = 0; i < report.records.size() && i < 8; ++i)
    {
        const auto &r = report.records[i];
        if (r.label != expect[i][0])
            out.fail("row " + std::to_string(i) + " label " + r.label);
        if (fmt2(r.p_conv.value()) != expect_conv[i])
            out.fail(r.label + " p_conv " + fmt2(r.p_conv.value()) + " != " + expect_conv[i]);
        if (fmt2(r.delta_p.value()) != expect[i][1])
            out.fail(r.label + " dP " + fmt2(r.delta_p.value()) + " != " + expect[i][1]);
    }
    if (fmt2(report.max_abs_delta_p.value()) != "6.60")
        out.fail("max |dP| " + fmt2(report.max_abs_delta_p.value()));
    if (report.max_abs_delta_p.value() > 7.0)
        out.fail("7 dB gate");

    const double dt = seconds_since(t0);
    if (dt >= 1.0)
        out.fail("runtime " + std::to_string(dt) + " s >= 1 s");
    out.detail = "8 records, max |dP| = " + fmt2(report.max_abs_delta_p.value()) + " dB, " +
                 std::to_string(dt) + " s" + (out.detail.empty() ? "" : "; " + out.detail);

#if defined(__unix__) || defined(__APPLE__)
    if (!g_cli.empty())
    {
        const std::string base = g_cli + " validate --tables " + g_data + "/paper";
        if (std::system((base + " --tolerance-db 7 >/dev/null 2>&1").c_str()) != 0)
            out.fail("CLI exit code at 7 dB gate");
        const int rc = std::system((base + " --tolerance-db 0.1 >/dev/null 2>&1").c_str());
        if (WEXITSTATUS(rc) != 2)
            out.fail("CLI breach exit code != 2");
    }
#endif
    return out;
}

// ---- criterion 2: double sum == angular convolution ---------------------

Outcome criterion2()
{
    Outcome out;
    const auto t0 = Clock::now();
    const DelayGrid grid(2.5, 511);
    double worst = 0.0;

    std::mt19937_64 seeds(20260808);
    for (int trial = 0; trial < 1000; ++trial)
    {
        std::mt19937_64 rng(seeds());
        GBSMParams gp;
        gp.num_clusters = 1 + static_cast<std::size_t>(rng() % 5);
        gp.paths_per_cluster = 1 + static_cast<std::size_t>(rng() % 10);
        gp.delay_scale_ns = 60.0;
        gp.angle_spread_deg = 10.0;
        gp.seed = rng();
        const TxRisChannel sub1 = gbsm_generate<Side::tx_ris>(gp);
        gp.seed = rng();
        const RisRxChannel sub2 = gbsm_generate<Side::ris_rx>(gp);

        const AntennaPattern tx_pat = AntennaPattern::horn(Db(20.0), 15.0, PlanarAngle(80.0));
        const AntennaPattern rx_pat = AntennaPattern::omni(Db(3.0));
        const ArrayElementOffset tx_off(0.5), rx_off(0.5);

        const GriddedCIR g1 = render_tx_ris(sub1, tx_pat, tx_off, grid);
        const GriddedCIR g2 = render_ris_rx(sub2, rx_pat, rx_off, grid);

        FrisTable table;
        table.theta_out_deg = g2.angle_axis_deg();
        table.theta_in_deg = g1.angle_axis_deg();
        std::uniform_real_distribution<double> gain(0.0, 40.0);
        const std::size_t cells = table.theta_out_deg.size() * table.theta_in_deg.size();
        table.gain_db.reserve(cells);
        for (std::size_t i = 0; i < cells; ++i)
            table.gain_db.push_back(Db(gain(rng)));

        const FrisFn fris = [&table](RisAngle o, RisAngle i) { return table.at(o, i); };
        const auto direct = cascade_direct(sub1, sub2, fris, tx_pat, rx_pat, tx_off, rx_off);
        const auto pdp_direct = binned_cascade_pdp(direct, sub1, sub2, grid);
        const auto pdp_conv = cir_to_pdp(cascade_convolution(g1, g2, table));

        if (pdp_direct.size() != pdp_conv.size())
        {
            out.fail("pdp length mismatch in trial " + std::to_string(trial));
            break;
        }
        for (std::size_t b = 0; b < pdp_direct.size(); ++b)
        {
            const double pd = linear_from_db(pdp_direct[b]);
            const double pc = linear_from_db(pdp_conv[b]);
            if (pd == 0.0 && pc == 0.0)
                continue;
            const double rel = std::fabs(pd - pc) / std::max(pd, pc);
            worst = std::max(worst, rel);
            if (rel > 1e-10)
            {
                out.fail("trial " + std::to_string(trial) + " bin " + std::to_string(b) +
                         " relative error " + std::to_string(rel));
                break;
            }
        }
        if (!out.pass)
            break;
    }

    const double dt = seconds_since(t0);
    if (dt >= 30.0)
        out.fail("runtime " + std::to_string(dt) + " s >= 30 s");
    char buf[96];
    std::snprintf(buf, sizeof(buf), "1000 pairs, worst rel err %.2e, %.1f s", worst, dt);
    out.detail = buf + (out.detail.empty() ? std::string() : "; " + out.detail);
    return out;
}

// ---- criterion 3: geometric delay checks --------------------------------

Outcome criterion3()
{
    Outcome out;
    const ScenarioFile sf = load_scenario(g_data + "/factory_paper.scenario");
    const DelayGrid grid(2.5, 511);

    struct Case
    {
        std::size_t tx_index;
        Side side;
        double expect_ns;     // tabulated bin center
        std::size_t expect_bin;
    };
    const Case cases[] = {{0, Side::tx_ris, 17.5, 7}, {1, Side::tx_ris, 10.0, 4},
                          {0, Side::ris_rx, 32.5, 13}};

    for (const auto &c : cases)
    {
        ScenarioGeometry g = sf.geometry_for_tx(c.tx_index);
        g.scatterers.clear(); // LOS checks
        const double delay = (c.side == Side::tx_ris)
                                 ? geometric_paths<Side::tx_ris>(g, Db(6.0)).paths[0].delay_ns
                                 : geometric_paths<Side::ris_rx>(g, Db(6.0)).paths[0].delay_ns;
        const std::size_t bin = delay_to_bin(delay, grid);
        if (bin != c.expect_bin)
            out.fail("bin " + std::to_string(bin) + " != " + std::to_string(c.expect_bin));
        if (std::fabs(grid.bin_center_ns(bin) - c.expect_ns) > 1e-9)
            out.fail("bin center vs tabulated delay");
        if (std::fabs(delay - c.expect_ns) > 2.5)
            out.fail("delay " + std::to_string(delay) + " beyond one bin of " + fmt2(c.expect_ns));
    }
    out.detail = "5 m -> 16.68 -> 17.5 ns; 3 m -> 10.0 ns; 10 m -> 33.36 -> 32.5 ns";
    return out;
}

// ---- criterion 4: cascade delay additivity ------------------------------

Outcome criterion4()
{
    Outcome out;
    const MeasuredTables tables = load_measured_tables(g_data + "/paper");
    const auto paths = cascade_direct(tables.tx_ris, tables.ris_rx, make_fris_constant(Db(0.0)),
                                      AntennaPattern::isotropic(), AntennaPattern::isotropic(),
                                      ArrayElementOffset(), ArrayElementOffset());
    if (paths.size() != 8)
        out.fail("expected 8 cascade paths");
    double d_1a = -1.0, d_2d = -1.0;
    for (const auto &p : paths)
    {
        if (p.label == "1-A")
            d_1a = p.delay_ns;
        if (p.label == "2-D")
            d_2d = p.delay_ns;
        if (p.delay_ns != tables.tx_ris.paths[p.idx_tx_ris].delay_ns +
                              tables.ris_rx.paths[p.idx_ris_rx].delay_ns)
            out.fail(p.label + " delay is not the exact parent sum");
    }
    if (d_1a != 50.0)
        out.fail("delay(1-A) = " + std::to_string(d_1a) + " != 50.0");
    if (d_2d != 130.0)
        out.fail("delay(2-D) = " + std::to_string(d_2d) + " != 130.0");
    out.detail = "delay(1-A) = 50.0 ns, delay(2-D) = 130.0 ns, exact";
    return out;
}

// ---- criterion 5: sounder fidelity --------------------------------------

Outcome criterion5()
{
    Outcome out;

    // Exact two-valued circular autocorrelation of the order-9 sequence.
    const auto seq = generate_mseq(9);
    if (seq.size() != 511)
        out.fail("sequence length");
    for (std::size_t lag = 0; lag < seq.size() && out.pass; ++lag)
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < seq.size(); ++i)
            acc += seq[i] * seq[(i + lag) % seq.size()];
        const double want = (lag == 0) ? 511.0 : -1.0;
        if (acc != want)
            out.fail("autocorrelation at lag " + std::to_string(lag) + " is " + std::to_string(acc));
    }

    // Every bin below the unambiguous range recovers exactly.
    const SoundingConfig cfg;
    double worst_db = 0.0;
    for (std::size_t bin = 0; bin < 511; bin += 1)
    {
        std::vector<std::complex<double>> cir(bin + 1, {0.0, 0.0});
        const double amp = 0.42;
        cir[bin] = std::polar(amp, 0.77);
        const auto est = sound_channel(cir, cfg);
        std::size_t peak = 0;
        for (std::size_t k = 0; k < est.size(); ++k)
            if (std::norm(est[k]) > std::norm(est[peak]))
                peak = k;
        if (peak != bin)
        {
            out.fail("peak bin " + std::to_string(peak) + " != " + std::to_string(bin));
            break;
        }
        const double err = std::fabs(10.0 * std::log10(std::norm(est[bin]) / (amp * amp)));
        worst_db = std::max(worst_db, err);
        if (err > 0.01)
        {
            out.fail("power error " + std::to_string(err) + " dB at bin " + std::to_string(bin));
            break;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "all 511 bins exact, worst power error %.1e dB", worst_db);
    out.detail = buf;
    return out;
}

// ---- criterion 6: scan-and-extract round trip ---------------------------

Outcome criterion6()
{
    Outcome out;
    const MeasuredTables tables = load_measured_tables(g_data + "/paper");
    const SoundingConfig cfg;
    // Horn with a deep sidelobe floor so extraction thresholds stay above
    // pattern plateaus (the default -20 dB cap is a mainlobe-only model).
    const auto horn = AntennaPattern::horn(Db(20.0), 15.0, PlanarAngle(0.0), Db(-60.0));

    const PADP padp = rotational_scan(scan_paths(tables.ris_rx), horn, 5.0, 360.0, cfg);
    const auto found = extract_paths(padp, Db(25.0), 2);
    if (found.size() != 4)
        out.fail("extracted " + std::to_string(found.size()) + " paths, expected 4");

    double worst_ang = 0.0, worst_pow = 0.0;
    for (const auto &want : tables.ris_rx.paths)
    {
        bool matched = false;
        for (const auto &got : found)
        {
            const double dang = std::fabs(PlanarAngle::wrap_180(got.pointing_deg - want.aoa.degrees()));
            if (dang > 2.5)
                continue;
            if (delay_to_bin(got.delay_ns, cfg.grid()) != delay_to_bin(want.delay_ns, cfg.grid()))
                continue;
            const double dp = std::fabs(got.power_db.value() - want.power_db.value());
            worst_ang = std::max(worst_ang, dang);
            worst_pow = std::max(worst_pow, dp);
            if (dp > 1.0)
                out.fail(want.label + " power error " + std::to_string(dp) + " dB");
            matched = true;
        }
        if (!matched)
            out.fail("path " + want.label + " not recovered");
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "4 paths, worst angle err %.1f deg, worst power err %.2f dB",
                  worst_ang, worst_pow);
    out.detail = buf;
    return out;
}

// ---- criterion 7: panel pattern properties ------------------------------

// Independent of the library path: full element-by-element sum.
double oracle_gain_db(const RISPanel &panel, const Codebook &cb, double theta_in_deg,
                      double theta_out_deg)
{
    const double a_in = (theta_in_deg - 90.0) * pi / 180.0;
    const double a_out = (theta_out_deg - 90.0) * pi / 180.0;
    const double u = std::sin(a_in) + std::sin(a_out);
    double re = 0.0, im = 0.0;
    for (std::size_t r = 0; r < panel.rows; ++r)
        for (std::size_t c = 0; c < panel.cols; ++c)
        {
            const double ph = cb.at(r, c) + 2.0 * pi * static_cast<double>(c) *
                                                panel.element_spacing_wavelengths * u;
            re += std::cos(ph);
            im += std::sin(ph);
        }
    const double g = std::pow(std::cos(a_in), panel.element_pattern_exponent) *
                     std::pow(std::cos(a_out), panel.element_pattern_exponent);
    const double p = g * g * (re * re + im * im);
    return p > 0.0 ? 10.0 * std::log10(p) : -1e300;
}

struct OraclePeak
{
    double angle_deg;
    double gain_db;
};

OraclePeak oracle_sweep(const RISPanel &panel, const Codebook &cb, double theta_in_deg)
{
    OraclePeak best{0.0, -1e300};
    for (double a = 0.5; a < 180.0; a += 0.5)
    {
        const double g = oracle_gain_db(panel, cb, theta_in_deg, a);
        if (g > best.gain_db)
            best = {a, g};
    }
    return best;
}

Outcome criterion7()
{
    Outcome out;
    const auto t0 = Clock::now();
    RISPanel panel{32, 32, 0.5, 1, 6.9e9, 1.0};

    // Targets drawn within 60 degrees of the normal, rejecting pairs whose
    // 1-bit conjugate lobe (the u -> -u image of a +-1 aperture, aliased
    // by the half-wavelength grating period) is not element-pattern
    // suppressed by at least 1 dB. With a 1-bit panel the conjugate lobe
    // has the same array-factor height as the target lobe, so this is a
    // physical identifiability bound, not an implementation allowance.
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> alpha(-60.0, 60.0);
    int accepted = 0, attempts = 0;
    double worst_off = 0.0, worst_loss = 0.0;

    while (accepted < 100 && attempts < 100000)
    {
        ++attempts;
        const double a_in = alpha(rng), a_star = alpha(rng);
        const double u_star = std::sin(a_in * pi / 180.0) + std::sin(a_star * pi / 180.0);
        double s_conj = -u_star - std::sin(a_in * pi / 180.0);
        s_conj -= 2.0 * std::round(s_conj / 2.0);
        if (std::fabs(s_conj) <= 1.0)
        {
            const double a_conj = std::asin(s_conj) * 180.0 / pi;
            const double penalty = 20.0 * std::log10(std::cos(a_conj * pi / 180.0) /
                                                     std::cos(a_star * pi / 180.0));
            if (penalty > -1.0)
                continue; // conjugate lobe not suppressed enough to resolve
        }
        ++accepted;

        const RisAngle theta_in(90.0 + a_in), theta_star(90.0 + a_star);
        const Codebook quant = generate_anomalous_codebook(panel, theta_in, theta_star);
        const Codebook cont = anomalous_phase_profile(panel, theta_in, theta_star);

        const OraclePeak qp = oracle_sweep(panel, quant, theta_in.degrees());
        const OraclePeak cp = oracle_sweep(panel, cont, theta_in.degrees());

        const double off = std::fabs(qp.angle_deg - theta_star.degrees());
        worst_off = std::max(worst_off, off);
        if (off > 5.0)
            out.fail("peak " + std::to_string(qp.angle_deg) + " deg vs target " +
                     std::to_string(theta_star.degrees()));

        const double loss = cp.gain_db - qp.gain_db;
        worst_loss = std::max(worst_loss, loss);
        if (loss > 6.0)
            out.fail("quantization loss " + std::to_string(loss) + " dB");

        // The library agrees with the oracle at the peak.
        const Db lib = f_ris_gain(panel, quant, theta_in, RisAngle(qp.angle_deg));
        if (lib.is_no_power() || std::fabs(lib.value() - qp.gain_db) > 1e-8)
            out.fail("library/oracle mismatch at the peak");

        if (!out.pass)
            break;
    }
    if (accepted < 100)
        out.fail("sampler starved");

    // Reciprocity is bit-exact.
    const Codebook cb = generate_anomalous_codebook(panel, RisAngle(70.0), RisAngle(120.0));
    std::uniform_real_distribution<double> ang(5.0, 175.0);
    for (int i = 0; i < 300; ++i)
    {
        const double a = ang(rng), b = ang(rng);
        if (f_ris_gain(panel, cb, RisAngle(a), RisAngle(b)).value() !=
            f_ris_gain(panel, cb, RisAngle(b), RisAngle(a)).value())
        {
            out.fail("reciprocity broken at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
            break;
        }
    }

    const double dt = seconds_since(t0);
    if (dt >= 60.0)
        out.fail("runtime " + std::to_string(dt) + " s >= 60 s");
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "100 targets (%d drawn), worst offset %.1f deg, worst 1-bit loss %.2f dB, %.1f s",
                  attempts, worst_off, worst_loss, dt);
    out.detail = buf;
    return out;
}

// ---- criterion 8: panel gains are ingested data -------------------------

Outcome criterion8()
{
    Outcome out;
    // The dataset's per-pair gains are not reproducible without the
    // measured codebook contents; the validation pipeline must therefore
    // carry them through verbatim from fris.csv rather than synthesizing
    // them (criterion 7 covers the synthetic pattern engine).
    const MeasuredTables tables = load_measured_tables(g_data + "/paper");
    const ValidationReport report = build_validation_table(tables, true);
    for (const auto &r : report.records)
    {
        const Db ingested = tables.f_ris_db.at(r.label);
        if (r.f_ris.value() != ingested.value())
            out.fail(r.label + " panel gain altered in flight");
    }
    out.detail = "per-pair panel gains pass through bit-exact from fris.csv";
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    for (int i = 1; i + 1 < argc; i += 2)
    {
        const std::string flag = argv[i];
        if (flag == "--data")
            g_data = argv[i + 1];
        else if (flag == "--cli")
            g_cli = argv[i + 1];
        else
        {
            std::cerr << "unknown flag " << flag << "\n";
            return 64;
        }
    }

    struct Entry
    {
        const char *name;
        std::function<Outcome()> run;
    };
    const Entry entries[] = {
        {"1 comparison-table reproduction", criterion1},
        {"2 double-sum / convolution equivalence", criterion2},
        {"3 geometric delay checks", criterion3},
        {"4 cascade delay additivity", criterion4},
        {"5 sounder fidelity", criterion5},
        {"6 scan-and-extract round trip", criterion6},
        {"7 panel pattern properties", criterion7},
        {"8 panel gains ingested, not synthesized", criterion8},
    };

    int failures = 0;
    for (const auto &e : entries)
    {
        Outcome out;
        try
        {
            out = e.run();
        }
        catch (const std::exception &ex)
        {
            out.pass = false;
            out.detail = std::string("exception: ") + ex.what();
        }
        std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << e.name;
        if (!out.detail.empty())
            std::cout << " [" << out.detail << "]";
        std::cout << "\n";
        if (!out.pass)
            ++failures;
    }

    if (failures == 0)
        std::cout << "acceptance: all criteria passed\n";
    else
        std::cout << "acceptance: " << failures << " criterion(s) FAILED\n";
    return failures == 0 ? 0 : 1;
}
