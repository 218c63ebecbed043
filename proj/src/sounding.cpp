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

#include "riscade/sounding.hpp"

#include "riscade/errors.hpp"
#include "riscade/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <tuple>

namespace riscade
{

namespace
{

// Primitive feedback tap positions per register length (1-indexed).
// A Fibonacci register with these taps and a nonzero seed walks the full
// 2^n - 1 state cycle; the unit tests assert the period for every order.
const std::array<std::vector<unsigned>, 17> mseq_taps = {{
    {},           // 0
    {},           // 1
    {2, 1},       // 2
    {3, 2},       // 3
    {4, 3},       // 4
    {5, 3},       // 5
    {6, 5},       // 6
    {7, 6},       // 7
    {8, 6, 5, 4}, // 8
    {9, 5},       // 9
    {10, 7},      // 10
    {11, 9},      // 11
    {12, 6, 4, 1},  // 12
    {13, 4, 3, 1},  // 13
    {14, 5, 3, 1},  // 14
    {15, 14},       // 15
    {16, 15, 13, 4} // 16
}};

} // namespace

void SoundingConfig::validate() const
{
    if (pn_order < 2 || pn_order > 16)
        throw std::domain_error("SoundingConfig: pn_order must be in [2, 16]");
    if (!(chip_rate_hz > 0.0) || !(carrier_hz > 0.0))
        throw std::domain_error("SoundingConfig: rates must be > 0");
}

std::vector<double> generate_mseq(unsigned order)
{
    if (order < 2 || order > 16)
        throw std::domain_error("generate_mseq: order must be in [2, 16]");

    const std::vector<unsigned> &taps = mseq_taps[order];
    const std::size_t n = (1u << order) - 1u;
    std::uint32_t state = (1u << order) - 1u; // all ones

    // Recurrence x[t+order] = xor over taps p of x[t + order - p], the
    // feedback polynomial X^order + sum X^(order-p) + 1.
    std::vector<double> seq(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        seq[i] = (state & 1u) ? -1.0 : 1.0;
        std::uint32_t fb = 0;
        for (unsigned p : taps)
            fb ^= (state >> (order - p)) & 1u;
        state = (state >> 1) | (fb << (order - 1));
    }
    return seq;
}

std::vector<std::complex<double>> sound_channel(std::span<const std::complex<double>> cir,
                                                const SoundingConfig &cfg, std::uint64_t seed)
{
    cfg.validate();
    const std::size_t n = cfg.sequence_length();
    if (cir.size() > n)
        throw aliasing_error("sound_channel: channel spans " + std::to_string(cir.size()) +
                             " bins, beyond the unambiguous range of " + std::to_string(n));

    const std::vector<double> chips = generate_mseq(cfg.pn_order);

    // Steady-state received stream of the periodically repeated sequence.
    std::vector<double> rx_re(n, 0.0), rx_im(n, 0.0);
    for (std::size_t k = 0; k < cir.size(); ++k)
    {
        const double hr = cir[k].real(), hi = cir[k].imag();
        if (hr == 0.0 && hi == 0.0)
            continue;
        for (std::size_t m = 0; m < n; ++m)
        {
            const double c = chips[(m + n - k) % n];
            rx_re[m] += hr * c;
            rx_im[m] += hi * c;
        }
    }

    if (!cfg.noise_floor_db.is_no_power())
    {
        // Per-bin post-correlation noise power equals the configured
        // floor; the pre-correlation per-sample variance is n times that.
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double sigma =
            std::sqrt(linear_from_db(cfg.noise_floor_db) * static_cast<double>(n) * 0.5);
        for (std::size_t m = 0; m < n; ++m)
        {
            rx_re[m] += sigma * gauss(rng);
            rx_im[m] += sigma * gauss(rng);
        }
    }

    // est[k] = (1/n) * sum_m rx[m] * chips[(m - k) mod n], lag split into
    // the two contiguous runs so the inner loops are plain dots.
    const auto &ops = kernels::active();
    std::vector<std::complex<double>> est(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        double hr = 0.0, hi = 0.0, tr = 0.0, ti = 0.0;
        ops.dot_real(rx_re.data() + k, rx_im.data() + k, chips.data(), n - k, &hr, &hi);
        if (k > 0)
            ops.dot_real(rx_re.data(), rx_im.data(), chips.data() + (n - k), k, &tr, &ti);
        est[k] = {(hr + tr) * inv_n, (hi + ti) * inv_n};
    }
    return est;
}

std::vector<std::complex<double>> alias_fold(std::span<const std::complex<double>> cir,
                                             std::size_t length)
{
    if (length == 0)
        throw std::domain_error("alias_fold: zero length");
    std::vector<std::complex<double>> folded(std::min(cir.size(), length), {0.0, 0.0});
    for (std::size_t k = 0; k < cir.size(); ++k)
        folded[k % length] += cir[k];
    return folded;
}

bool PADP::circular() const noexcept
{
    return std::fabs(static_cast<double>(num_pointings()) * step_deg - 360.0) < 1e-9;
}

std::vector<ScanPath> scan_paths(const RisRxChannel &sub)
{
    std::vector<ScanPath> out;
    out.reserve(sub.paths.size());
    for (const auto &p : sub.paths)
        out.push_back({p.aoa.degrees(), p.delay_ns, p.power_db, p.phase_rad});
    return out;
}

std::vector<ScanPath> scan_paths(const std::vector<CascadePath> &cascade)
{
    std::vector<ScanPath> out;
    out.reserve(cascade.size());
    for (const auto &p : cascade)
        out.push_back({p.aoa_rx.degrees(), p.delay_ns, p.power_db, p.phase_rad});
    return out;
}

PADP rotational_scan(std::span<const ScanPath> paths, const AntennaPattern &horn, double step_deg,
                     double span_deg, const SoundingConfig &cfg, std::uint64_t seed, double start_deg)
{
    cfg.validate();
    if (paths.empty())
        throw std::domain_error("rotational_scan: no paths");
    if (!(step_deg > 0.0) || !(span_deg > 0.0))
        throw std::domain_error("rotational_scan: step and span must be > 0");
    const double ratio = span_deg / step_deg;
    if (std::fabs(ratio - std::round(ratio)) > 1e-9)
        throw std::domain_error("rotational_scan: step must divide span");

    const bool full_circle = std::fabs(span_deg - 360.0) < 1e-9;
    const std::size_t n_pointings =
        static_cast<std::size_t>(std::llround(ratio)) + (full_circle ? 0 : 1);

    const DelayGrid grid = cfg.grid();
    std::size_t max_bin = 0;
    for (const auto &p : paths)
        max_bin = std::max(max_bin, delay_to_bin(p.delay_ns, grid));

    PADP padp;
    padp.start_deg = PlanarAngle::wrap_360(start_deg);
    padp.step_deg = step_deg;
    padp.grid = grid;
    padp.power.reserve(n_pointings);

    const double peak = horn.peak_gain_dbi.value();
    std::vector<std::complex<double>> cir(max_bin + 1);

    for (std::size_t ip = 0; ip < n_pointings; ++ip)
    {
        const PlanarAngle pointing(start_deg + static_cast<double>(ip) * step_deg);
        const AntennaPattern pat = horn.pointed_at(pointing);

        std::fill(cir.begin(), cir.end(), std::complex<double>(0.0, 0.0));
        for (const auto &p : paths)
        {
            if (p.power_db.is_no_power())
                continue;
            const double gain = antenna_gain(pat, PlanarAngle(p.aoa_deg)).value();
            const double amp = amplitude_from_db(Db(p.power_db.value() + gain - peak));
            cir[delay_to_bin(p.delay_ns, grid)] +=
                std::complex<double>(amp * std::cos(p.phase_rad), amp * std::sin(p.phase_rad));
        }

        const auto est = sound_channel(cir, cfg, seed + ip);
        auto pdp = cir_to_pdp(std::span<const std::complex<double>>(est.data(), max_bin + 1));
        padp.power.push_back(std::move(pdp));
    }
    return padp;
}

std::vector<ExtractedPath> extract_paths(const PADP &padp, Db threshold_db, std::size_t min_separation)
{
    if (padp.power.empty() || padp.power.front().empty())
        throw std::domain_error("extract_paths: empty PADP");

    const std::size_t n_rows = padp.power.size();
    const std::size_t n_cols = padp.power.front().size();
    const bool wrap = padp.circular();

    Db global_max = Db::no_power();
    for (const auto &row : padp.power)
        for (Db v : row)
            if (!v.is_no_power() && (global_max.is_no_power() || v > global_max))
                global_max = v;
    if (global_max.is_no_power())
        return {};

    const double cut = global_max.value() - threshold_db.value();

    auto cell = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> double {
        if (j < 0 || j >= static_cast<std::ptrdiff_t>(n_cols))
            return -std::numeric_limits<double>::infinity();
        if (wrap)
            i = (i % static_cast<std::ptrdiff_t>(n_rows) + n_rows) % static_cast<std::ptrdiff_t>(n_rows);
        else if (i < 0 || i >= static_cast<std::ptrdiff_t>(n_rows))
            return -std::numeric_limits<double>::infinity();
        const Db v = padp.power[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return v.is_no_power() ? -std::numeric_limits<double>::infinity() : v.value();
    };

    struct Candidate
    {
        std::size_t i, j;
        double v;
    };
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < n_rows; ++i)
        for (std::size_t j = 0; j < n_cols; ++j)
        {
            const double v = cell(static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(j));
            if (!(v > cut))
                continue;
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di)
                for (int dj = -1; dj <= 1; ++dj)
                {
                    if (di == 0 && dj == 0)
                        continue;
                    if (cell(static_cast<std::ptrdiff_t>(i) + di, static_cast<std::ptrdiff_t>(j) + dj) > v)
                    {
                        is_max = false;
                        break;
                    }
                }
            if (is_max)
                cands.push_back({i, j, v});
        }

    std::sort(cands.begin(), cands.end(), [](const Candidate &a, const Candidate &b) {
        if (a.v != b.v)
            return a.v > b.v;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });

    auto row_dist = [&](std::size_t a, std::size_t b) -> std::size_t {
        const std::size_t d = (a > b) ? a - b : b - a;
        return wrap ? std::min(d, n_rows - d) : d;
    };

    std::vector<ExtractedPath> out;
    std::vector<Candidate> accepted;
    for (const Candidate &c : cands)
    {
        bool blocked = false;
        for (const Candidate &a : accepted)
            if (row_dist(c.i, a.i) < min_separation &&
                ((c.j > a.j ? c.j - a.j : a.j - c.j) < min_separation))
            {
                blocked = true;
                break;
            }
        if (blocked)
            continue;
        accepted.push_back(c);
        out.push_back({padp.pointing_deg(c.i), padp.grid.bin_center_ns(c.j), Db(c.v)});
    }
    return out;
}

} // namespace riscade
