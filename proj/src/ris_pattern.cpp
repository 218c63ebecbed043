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

#include "riscade/ris_pattern.hpp"

#include "riscade/errors.hpp"
#include "riscade/kernels.hpp"

#include <cmath>
#include <istream>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace riscade
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_2pi(double rad) noexcept
{
    double w = std::fmod(rad, two_pi);
    if (w < 0.0)
        w += two_pi;
    if (w >= two_pi)
        w = 0.0;
    return w;
}

// Signed angle from the panel normal (boresight at 90 deg in the RIS
// frame). Throws for directions behind the panel.
double alpha_from_normal_rad(RisAngle theta)
{
    double alpha = PlanarAngle::wrap_180(theta.degrees() - 90.0);
    if (!(std::fabs(alpha) < 90.0))
        throw std::domain_error("ris pattern: angle " + std::to_string(theta.degrees()) +
                                " deg is behind the panel");
    return alpha * std::numbers::pi / 180.0;
}

// Per-column sums of the element phasors. The steering term of the
// azimuth-only model varies per column but not per row, so the full
// rows x cols sum factors through these.
struct ColumnSums
{
    std::vector<double> re, im;
};

ColumnSums column_sums(const Codebook &cb)
{
    ColumnSums s;
    s.re.assign(cb.cols(), 0.0);
    s.im.assign(cb.cols(), 0.0);
    for (std::size_t r = 0; r < cb.rows(); ++r)
        for (std::size_t c = 0; c < cb.cols(); ++c)
        {
            double p = cb.at(r, c);
            s.re[c] += std::cos(p);
            s.im[c] += std::sin(p);
        }
    return s;
}

Db gain_prepared(const RISPanel &panel, const ColumnSums &sums, RisAngle theta_in, RisAngle theta_out)
{
    const double a_in = alpha_from_normal_rad(theta_in);
    const double a_out = alpha_from_normal_rad(theta_out);
    const double u = std::sin(a_in) + std::sin(a_out);

    // Steering phasors exp(j * 2*pi * spacing * c * u), built by recurrence.
    const std::size_t n = sums.re.size();
    std::vector<double> st_re(n), st_im(n);
    const double step = two_pi * panel.element_spacing_wavelengths * u;
    const double qr = std::cos(step), qi = std::sin(step);
    double pr = 1.0, pi = 0.0;
    for (std::size_t c = 0; c < n; ++c)
    {
        st_re[c] = pr;
        st_im[c] = pi;
        const double nr = pr * qr - pi * qi;
        pi = pr * qi + pi * qr;
        pr = nr;
    }

    double afr = 0.0, afi = 0.0;
    kernels::active().dot_complex(sums.re.data(), sums.im.data(), st_re.data(), st_im.data(), n, &afr, &afi);

    const double q = panel.element_pattern_exponent;
    const double g = std::pow(std::cos(a_in), q) * std::pow(std::cos(a_out), q);
    const double p = g * g * (afr * afr + afi * afi);
    if (p <= 0.0)
        return Db::no_power();
    return Db(10.0 * std::log10(p));
}

} // namespace

void RISPanel::validate() const
{
    if (rows < 1 || cols < 1)
        throw std::domain_error("RISPanel: rows and cols must be >= 1");
    if (phase_bits < 1 || phase_bits > 16)
        throw std::domain_error("RISPanel: phase_bits must be in [1, 16]");
    if (!(element_spacing_wavelengths > 0.0))
        throw std::domain_error("RISPanel: element spacing must be > 0");
    if (!(center_freq_hz > 0.0))
        throw std::domain_error("RISPanel: center frequency must be > 0");
    if (element_pattern_exponent < 0.0)
        throw std::domain_error("RISPanel: element pattern exponent must be >= 0");
}

Codebook::Codebook(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), phases_(rows * cols, fill)
{
    if (rows == 0 || cols == 0)
        throw std::domain_error("Codebook: empty matrix");
}

bool Codebook::is_quantized(unsigned bits, double tol) const noexcept
{
    const double step = two_pi / static_cast<double>(1u << bits);
    for (double p : phases_)
    {
        double k = p / step;
        if (std::fabs(k - std::round(k)) > tol)
            return false;
    }
    return true;
}

void Codebook::write(std::ostream &os) const
{
    os.precision(17);
    for (std::size_t r = 0; r < rows_; ++r)
    {
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c ? " " : "") << at(r, c);
        os << '\n';
    }
}

Codebook Codebook::read(std::istream &is)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line))
    {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v)
            row.push_back(v);
        if (!ls.eof())
            throw parse_error("codebook: non-numeric token on line " + std::to_string(line_no));
        if (row.empty())
            continue;
        if (!rows.empty() && row.size() != rows.front().size())
            throw parse_error("codebook: ragged row on line " + std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw parse_error("codebook: no data rows");
    Codebook cb(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < cb.rows(); ++r)
        for (std::size_t c = 0; c < cb.cols(); ++c)
            cb.at(r, c) = rows[r][c];
    return cb;
}

Codebook quantize_phases(const Codebook &continuous, unsigned bits)
{
    if (bits < 1 || bits > 16)
        throw std::domain_error("quantize_phases: bits must be in [1, 16]");
    const auto n_states = static_cast<double>(1u << bits);
    const double step = two_pi / n_states;

    Codebook out(continuous.rows(), continuous.cols());
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c)
        {
            double u = wrap_2pi(continuous.at(r, c)) / step;
            double k = std::floor(u + 0.5);
            if (k - u == 0.5) // exact midpoint: take the lower state
                k -= 1.0;
            if (k >= n_states)
                k -= n_states;
            out.at(r, c) = k * step;
        }
    return out;
}

Codebook anomalous_phase_profile(const RISPanel &panel, RisAngle theta_in, RisAngle theta_out_target)
{
    panel.validate();
    const double a_in = alpha_from_normal_rad(theta_in);
    const double a_out = alpha_from_normal_rad(theta_out_target);
    const double u = std::sin(a_in) + std::sin(a_out);

    Codebook cb(panel.rows, panel.cols);
    for (std::size_t c = 0; c < panel.cols; ++c)
    {
        const double x_wl = static_cast<double>(c) * panel.element_spacing_wavelengths;
        const double phi = wrap_2pi(-two_pi * x_wl * u);
        for (std::size_t r = 0; r < panel.rows; ++r)
            cb.at(r, c) = phi;
    }
    return cb;
}

Codebook generate_anomalous_codebook(const RISPanel &panel, RisAngle theta_in, RisAngle theta_out_target)
{
    return quantize_phases(anomalous_phase_profile(panel, theta_in, theta_out_target), panel.phase_bits);
}

Db f_ris_gain(const RISPanel &panel, const Codebook &codebook, RisAngle theta_in, RisAngle theta_out)
{
    panel.validate();
    if (codebook.rows() != panel.rows || codebook.cols() != panel.cols)
        throw dimension_error("f_ris_gain: codebook shape does not match the panel");
    return gain_prepared(panel, column_sums(codebook), theta_in, theta_out);
}

RadiationPatternTable pattern_table(const RISPanel &panel, const Codebook &codebook, RisAngle theta_in,
                                    const std::vector<RisAngle> &theta_out_grid)
{
    panel.validate();
    if (codebook.rows() != panel.rows || codebook.cols() != panel.cols)
        throw dimension_error("pattern_table: codebook shape does not match the panel");
    if (theta_out_grid.empty())
        throw std::domain_error("pattern_table: empty grid");

    const ColumnSums sums = column_sums(codebook);
    RadiationPatternTable table;
    table.theta_in = theta_in;
    table.theta_out_deg.reserve(theta_out_grid.size());
    table.gain_db.reserve(theta_out_grid.size());
    for (RisAngle out : theta_out_grid)
    {
        table.theta_out_deg.push_back(out.degrees());
        table.gain_db.push_back(gain_prepared(panel, sums, theta_in, out));
    }
    return table;
}

FrisFn make_fris(RISPanel panel, Codebook codebook, Db offset_db)
{
    panel.validate();
    if (codebook.rows() != panel.rows || codebook.cols() != panel.cols)
        throw dimension_error("make_fris: codebook shape does not match the panel");
    auto sums = std::make_shared<const ColumnSums>(column_sums(codebook));
    return [panel, sums, offset_db](RisAngle theta_out, RisAngle theta_in) -> Db {
        Db g = gain_prepared(panel, *sums, theta_in, theta_out);
        if (g.is_no_power())
            return g;
        return g + offset_db;
    };
}

FrisFn make_fris_constant(Db gain_db)
{
    return [gain_db](RisAngle, RisAngle) { return gain_db; };
}

} // namespace riscade
