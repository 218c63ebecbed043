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

#include "riscade/cascade.hpp"

#include "riscade/channel_synth.hpp"
#include "riscade/errors.hpp"
#include "riscade/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace riscade
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double axis_tol_deg = 1e-9;

double wrap_2pi(double rad) noexcept
{
    double w = std::fmod(rad, two_pi);
    if (w < 0.0)
        w += two_pi;
    if (w >= two_pi)
        w = 0.0;
    return w;
}

std::size_t axis_index(const std::vector<double> &axis, double value, const char *what)
{
    auto it = std::lower_bound(axis.begin(), axis.end(), value - axis_tol_deg);
    if (it == axis.end() || std::fabs(*it - value) > axis_tol_deg)
        throw lookup_error(std::string(what) + ": no grid point at " + std::to_string(value) + " deg");
    return static_cast<std::size_t>(it - axis.begin());
}

// First and last occupied bin of a planar row, or {0, 0, false}.
struct Span
{
    std::size_t first = 0, last = 0;
    bool occupied = false;
};

Span occupied_span(const std::vector<double> &re, const std::vector<double> &im)
{
    Span s;
    for (std::size_t i = 0; i < re.size(); ++i)
        if (re[i] != 0.0 || im[i] != 0.0)
        {
            if (!s.occupied)
            {
                s.first = i;
                s.occupied = true;
            }
            s.last = i;
        }
    return s;
}

std::vector<std::complex<double>> convolve_grids(const GriddedCIR &tx_ris, const GriddedCIR &ris_rx,
                                                 const std::function<Db(std::size_t, std::size_t)> &gain_at)
{
    if (std::fabs(tx_ris.grid().bin_width_ns - ris_rx.grid().bin_width_ns) > 1e-12)
        throw dimension_error("cascade_convolution: sub-channel grids use different delay bins");

    const std::size_t n1 = tx_ris.num_bins();
    const std::size_t n2 = ris_rx.num_bins();
    const std::size_t n_out = n1 + n2 - 1;
    std::vector<double> out_re(n_out, 0.0), out_im(n_out, 0.0);

    const auto &ops = kernels::active();

    // Trim rows to their occupied span once; sparse scenes then cost one
    // short convolution per angle pair.
    std::vector<Span> span1(tx_ris.angle_axis_deg().size());
    for (std::size_t i = 0; i < span1.size(); ++i)
        span1[i] = occupied_span(tx_ris.row_re(i), tx_ris.row_im(i));
    std::vector<Span> span2(ris_rx.angle_axis_deg().size());
    for (std::size_t i = 0; i < span2.size(); ++i)
        span2[i] = occupied_span(ris_rx.row_re(i), ris_rx.row_im(i));

    for (std::size_t io = 0; io < ris_rx.angle_axis_deg().size(); ++io)
    {
        if (!span2[io].occupied)
            continue;
        for (std::size_t ii = 0; ii < tx_ris.angle_axis_deg().size(); ++ii)
        {
            if (!span1[ii].occupied)
                continue;
            const Db g = gain_at(io, ii);
            if (g.is_no_power())
                continue;
            const double w = amplitude_from_db(g);

            const Span &sa = span2[io];
            const Span &sb = span1[ii];
            const std::size_t off = sa.first + sb.first;
            ops.conv_accum(ris_rx.row_re(io).data() + sa.first, ris_rx.row_im(io).data() + sa.first,
                           sa.last - sa.first + 1, tx_ris.row_re(ii).data() + sb.first,
                           tx_ris.row_im(ii).data() + sb.first, sb.last - sb.first + 1, w,
                           out_re.data() + off, out_im.data() + off);
        }
    }

    std::vector<std::complex<double>> out(n_out);
    for (std::size_t i = 0; i < n_out; ++i)
        out[i] = {out_re[i], out_im[i]};
    return out;
}

} // namespace

std::vector<CascadePath> cascade_direct(const TxRisChannel &sub1, const RisRxChannel &sub2,
                                        const FrisFn &f_ris, const AntennaPattern &tx_pattern,
                                        const AntennaPattern &rx_pattern, ArrayElementOffset tx_offset,
                                        ArrayElementOffset rx_offset)
{
    sub1.validate();
    sub2.validate();
    if (!f_ris)
        throw std::invalid_argument("cascade_direct: no panel gain provider");

    std::vector<CascadePath> out;
    out.reserve(sub1.paths.size() * sub2.paths.size());

    for (std::size_t n1 = 0; n1 < sub1.paths.size(); ++n1)
    {
        const TxRisPath &p1 = sub1.paths[n1];
        const Db f_s = antenna_gain(tx_pattern, p1.aod.value());
        const double psi_tx = steering_phase(tx_offset, p1.aod);

        for (std::size_t n2 = 0; n2 < sub2.paths.size(); ++n2)
        {
            const RisRxPath &p2 = sub2.paths[n2];
            const Db f_r = f_ris(p2.aod, p1.aoa);
            const Db f_u = antenna_gain(rx_pattern, p2.aoa.value());

            CascadePath cp;
            cp.idx_tx_ris = n1;
            cp.idx_ris_rx = n2;
            cp.label = p1.label + "-" + p2.label;
            cp.power_db = f_r.is_no_power() ? Db::no_power()
                                            : power_cascade_db(p1.power_db, p2.power_db, f_r) + f_s + f_u;
            cp.delay_ns = p1.delay_ns + p2.delay_ns;
            cp.aoa_rx = p2.aoa;
            cp.phase_rad =
                wrap_2pi(p1.phase_rad + p2.phase_rad + psi_tx + steering_phase(rx_offset, p2.aoa));
            out.push_back(std::move(cp));
        }
    }
    return out;
}

GriddedCIR::GriddedCIR(std::vector<double> angle_axis_deg, DelayGrid grid, std::size_t num_bins)
    : angles_(std::move(angle_axis_deg)), grid_(grid), num_bins_(num_bins)
{
    if (angles_.empty())
        throw std::domain_error("GriddedCIR: empty angle axis");
    if (num_bins_ == 0)
        throw std::domain_error("GriddedCIR: empty delay axis");
    if (!std::is_sorted(angles_.begin(), angles_.end()))
        throw std::domain_error("GriddedCIR: angle axis must be sorted");
    re_.assign(angles_.size(), std::vector<double>(num_bins_, 0.0));
    im_.assign(angles_.size(), std::vector<double>(num_bins_, 0.0));
}

std::complex<double> GriddedCIR::at(std::size_t angle_idx, std::size_t bin) const
{
    return {re_.at(angle_idx).at(bin), im_.at(angle_idx).at(bin)};
}

void GriddedCIR::add(std::size_t angle_idx, std::size_t bin, std::complex<double> amp)
{
    re_.at(angle_idx).at(bin) += amp.real();
    im_.at(angle_idx).at(bin) += amp.imag();
}

namespace
{

// RIS-side azimuth of a path: theta_in for Tx-RIS, theta_out for RIS-Rx.
template <Side S>
double ris_side_deg(const PathOf<S> &p)
{
    if constexpr (S == Side::tx_ris)
        return p.aoa.degrees();
    else
        return p.aod.degrees();
}

template <Side S>
GriddedCIR render_side(const SubChannel<S> &sub, const AntennaPattern &terminal_pattern,
                       ArrayElementOffset terminal_offset, const DelayGrid &grid,
                       const std::function<std::size_t(double)> &cell_of, std::vector<double> axis)
{
    std::size_t max_bin = 0;
    for (const auto &p : sub.paths)
        max_bin = std::max(max_bin, delay_to_bin(p.delay_ns, grid));

    GriddedCIR out(std::move(axis), grid, max_bin + 1);
    for (const auto &p : sub.paths)
    {
        PlanarAngle terminal_angle;
        double steer;
        if constexpr (S == Side::tx_ris)
        {
            terminal_angle = p.aod.value();
            steer = steering_phase(terminal_offset, p.aod);
        }
        else
        {
            terminal_angle = p.aoa.value();
            steer = steering_phase(terminal_offset, p.aoa);
        }
        if (p.power_db.is_no_power())
            continue;
        const Db weighted = p.power_db + antenna_gain(terminal_pattern, terminal_angle);
        const double amp = amplitude_from_db(weighted);
        const double ph = p.phase_rad + steer;
        out.add(cell_of(ris_side_deg<S>(p)), delay_to_bin(p.delay_ns, grid),
                {amp * std::cos(ph), amp * std::sin(ph)});
    }
    return out;
}

template <Side S>
GriddedCIR render_sparse(const SubChannel<S> &sub, const AntennaPattern &pattern,
                         ArrayElementOffset offset, const DelayGrid &grid)
{
    sub.validate();
    std::vector<double> axis;
    axis.reserve(sub.paths.size());
    for (const auto &p : sub.paths)
        axis.push_back(ris_side_deg<S>(p));
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());

    std::vector<double> lookup = axis;
    return render_side<S>(sub, pattern, offset, grid,
                          [lookup](double deg) { return axis_index(lookup, deg, "render"); },
                          std::move(axis));
}

template <Side S>
GriddedCIR render_snapped(const SubChannel<S> &sub, const AntennaPattern &pattern,
                          ArrayElementOffset offset, const DelayGrid &grid, const AngleGrid &angles)
{
    sub.validate();
    angles.validate();
    return render_side<S>(sub, pattern, offset, grid,
                          [angles](double deg) { return angles.nearest_cell(deg); },
                          angles.axis_deg());
}

} // namespace

void AngleGrid::validate() const
{
    if (!(step_deg > 0.0) || count == 0)
        throw std::domain_error("AngleGrid: need a positive step and at least one cell");
    if (static_cast<double>(count) * step_deg > 360.0 + 1e-9)
        throw std::domain_error("AngleGrid: axis spans more than a full circle");
}

std::vector<double> AngleGrid::axis_deg() const
{
    validate();
    std::vector<double> axis(count);
    for (std::size_t k = 0; k < count; ++k)
        axis[k] = start_deg + static_cast<double>(k) * step_deg;
    return axis;
}

std::size_t AngleGrid::nearest_cell(double angle_deg) const
{
    validate();
    const bool closes = std::fabs(static_cast<double>(count) * step_deg - 360.0) < 1e-9;
    double rel = angle_deg - start_deg;
    rel -= 360.0 * std::floor(rel / 360.0); // into [0, 360)
    double k = std::floor(rel / step_deg + 0.5);
    if (closes)
    {
        if (k >= static_cast<double>(count))
            k = 0.0; // wrapped past the last cell back to the first
    }
    else if (k > static_cast<double>(count) - 1.0)
    {
        // Beyond the last cell of a partial axis: nearer of the two ends.
        k = (rel - static_cast<double>(count - 1) * step_deg <
             360.0 - rel) // distance down to the last cell vs up to the first
                ? static_cast<double>(count) - 1.0
                : 0.0;
    }
    return static_cast<std::size_t>(k);
}

GriddedCIR render_tx_ris(const TxRisChannel &sub, const AntennaPattern &tx_pattern,
                         ArrayElementOffset tx_offset, const DelayGrid &grid)
{
    return render_sparse<Side::tx_ris>(sub, tx_pattern, tx_offset, grid);
}

GriddedCIR render_ris_rx(const RisRxChannel &sub, const AntennaPattern &rx_pattern,
                         ArrayElementOffset rx_offset, const DelayGrid &grid)
{
    return render_sparse<Side::ris_rx>(sub, rx_pattern, rx_offset, grid);
}

GriddedCIR render_tx_ris(const TxRisChannel &sub, const AntennaPattern &tx_pattern,
                         ArrayElementOffset tx_offset, const DelayGrid &grid, const AngleGrid &angles)
{
    return render_snapped<Side::tx_ris>(sub, tx_pattern, tx_offset, grid, angles);
}

GriddedCIR render_ris_rx(const RisRxChannel &sub, const AntennaPattern &rx_pattern,
                         ArrayElementOffset rx_offset, const DelayGrid &grid, const AngleGrid &angles)
{
    return render_snapped<Side::ris_rx>(sub, rx_pattern, rx_offset, grid, angles);
}

void FrisTable::validate() const
{
    if (theta_out_deg.empty() || theta_in_deg.empty())
        throw dimension_error("FrisTable: empty axis");
    if (!std::is_sorted(theta_out_deg.begin(), theta_out_deg.end()) ||
        !std::is_sorted(theta_in_deg.begin(), theta_in_deg.end()))
        throw dimension_error("FrisTable: axes must be sorted ascending");
    if (gain_db.size() != theta_out_deg.size() * theta_in_deg.size())
        throw dimension_error("FrisTable: value count does not match the axes");
}

Db FrisTable::at(RisAngle theta_out, RisAngle theta_in) const
{
    validate();
    const double to = theta_out.degrees();
    const double ti = theta_in.degrees();

    auto exact = [](const std::vector<double> &axis, double v) -> std::ptrdiff_t {
        auto it = std::lower_bound(axis.begin(), axis.end(), v - axis_tol_deg);
        if (it != axis.end() && std::fabs(*it - v) <= axis_tol_deg)
            return it - axis.begin();
        return -1;
    };

    const std::ptrdiff_t io = exact(theta_out_deg, to);
    const std::ptrdiff_t ii = exact(theta_in_deg, ti);
    if (io >= 0 && ii >= 0)
        return gain_db[static_cast<std::size_t>(io) * theta_in_deg.size() + static_cast<std::size_t>(ii)];

    if (!interpolate)
        throw lookup_error("FrisTable: no sample at (" + std::to_string(to) + ", " + std::to_string(ti) +
                           ") deg and interpolation is disabled");

    auto bracket = [](const std::vector<double> &axis, double v) -> std::pair<std::size_t, double> {
        if (v < axis.front() - axis_tol_deg || v > axis.back() + axis_tol_deg)
            throw lookup_error("FrisTable: angle " + std::to_string(v) + " deg outside the table");
        if (v <= axis.front())
            return {0, 0.0};
        if (v >= axis.back())
            return {axis.size() - 2, 1.0};
        auto hi = std::upper_bound(axis.begin(), axis.end(), v);
        std::size_t k = static_cast<std::size_t>(hi - axis.begin()) - 1;
        if (k + 1 >= axis.size())
            k = axis.size() - 2;
        double t = (v - axis[k]) / (axis[k + 1] - axis[k]);
        return {k, t};
    };

    if (theta_out_deg.size() < 2 || theta_in_deg.size() < 2)
        throw lookup_error("FrisTable: interpolation needs at least a 2x2 table");

    auto [ko, fo] = bracket(theta_out_deg, to);
    auto [ki, fi] = bracket(theta_in_deg, ti);
    auto cell = [&](std::size_t o, std::size_t i) {
        Db g = gain_db[o * theta_in_deg.size() + i];
        if (g.is_no_power())
            throw lookup_error("FrisTable: cannot interpolate across a no-power cell");
        return g.value();
    };
    const double g0 = cell(ko, ki) * (1.0 - fi) + cell(ko, ki + 1) * fi;
    const double g1 = cell(ko + 1, ki) * (1.0 - fi) + cell(ko + 1, ki + 1) * fi;
    return Db(g0 * (1.0 - fo) + g1 * fo);
}

std::vector<std::complex<double>> cascade_convolution(const GriddedCIR &tx_ris, const GriddedCIR &ris_rx,
                                                      const FrisFn &f_ris)
{
    if (!f_ris)
        throw std::invalid_argument("cascade_convolution: no panel gain provider");
    return convolve_grids(tx_ris, ris_rx, [&](std::size_t io, std::size_t ii) {
        return f_ris(RisAngle(ris_rx.angle_axis_deg()[io]), RisAngle(tx_ris.angle_axis_deg()[ii]));
    });
}

std::vector<std::complex<double>> cascade_convolution(const GriddedCIR &tx_ris, const GriddedCIR &ris_rx,
                                                      const FrisTable &f_ris)
{
    f_ris.validate();
    auto axes_equal = [](const std::vector<double> &a, const std::vector<double> &b) {
        if (a.size() != b.size())
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::fabs(a[i] - b[i]) > axis_tol_deg)
                return false;
        return true;
    };
    if (!axes_equal(f_ris.theta_out_deg, ris_rx.angle_axis_deg()) ||
        !axes_equal(f_ris.theta_in_deg, tx_ris.angle_axis_deg()))
        throw dimension_error("cascade_convolution: table axes do not match the sub-channel grids");

    const std::size_t n_in = f_ris.theta_in_deg.size();
    return convolve_grids(tx_ris, ris_rx,
                          [&](std::size_t io, std::size_t ii) { return f_ris.gain_db[io * n_in + ii]; });
}

std::vector<Db> cir_to_pdp(std::span<const std::complex<double>> cir)
{
    std::vector<Db> pdp;
    pdp.reserve(cir.size());
    for (const auto &h : cir)
    {
        const double p = std::norm(h);
        pdp.push_back(p > 0.0 ? Db(10.0 * std::log10(p)) : Db::no_power());
    }
    return pdp;
}

std::vector<std::complex<double>> render_cascade_cir(const std::vector<CascadePath> &paths,
                                                     const DelayGrid &grid)
{
    std::size_t max_bin = 0;
    for (const auto &p : paths)
        max_bin = std::max(max_bin, delay_to_bin(p.delay_ns, grid));
    std::vector<std::complex<double>> cir(max_bin + 1, {0.0, 0.0});
    for (const auto &p : paths)
    {
        if (p.power_db.is_no_power())
            continue;
        const double amp = amplitude_from_db(p.power_db);
        cir[delay_to_bin(p.delay_ns, grid)] += std::complex<double>(amp * std::cos(p.phase_rad),
                                                                    amp * std::sin(p.phase_rad));
    }
    return cir;
}

std::vector<Db> binned_cascade_pdp(const std::vector<CascadePath> &paths, const TxRisChannel &sub1,
                                   const RisRxChannel &sub2, const DelayGrid &grid)
{
    std::size_t max1 = 0, max2 = 0;
    for (const auto &p : sub1.paths)
        max1 = std::max(max1, delay_to_bin(p.delay_ns, grid));
    for (const auto &p : sub2.paths)
        max2 = std::max(max2, delay_to_bin(p.delay_ns, grid));

    std::vector<std::complex<double>> cir(max1 + max2 + 1, {0.0, 0.0});
    for (const auto &p : paths)
    {
        if (p.power_db.is_no_power())
            continue;
        const std::size_t bin = delay_to_bin(sub1.paths.at(p.idx_tx_ris).delay_ns, grid) +
                                delay_to_bin(sub2.paths.at(p.idx_ris_rx).delay_ns, grid);
        const double amp = amplitude_from_db(p.power_db);
        cir[bin] += std::complex<double>(amp * std::cos(p.phase_rad), amp * std::sin(p.phase_rad));
    }
    return cir_to_pdp(cir);
}

} // namespace riscade
