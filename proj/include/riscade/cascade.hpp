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
// Cascading of the two sub-channels into the end-to-end channel, by the
// direct double sum over path pairs and by the angular-convolution form.
// The two routes are algebraically identical; the convolution route works
// on delay-gridded sub-channels, so the comparison helper bins the direct
// route's paths at the sum of the parents' bins (the same quantization
// the gridded route applies to its inputs).

#ifndef riscade_cascade_H
#define riscade_cascade_H

#include "riscade/antenna.hpp"
#include "riscade/delay_grid.hpp"
#include "riscade/path_types.hpp"
#include "riscade/ris_pattern.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace riscade
{

// One cascaded path (n1, n2). delay_ns is the exact sum of the parents'
// delays; power_db follows the dB cascade rule and may be the no-power
// sentinel when the panel gain is a perfect null.
struct CascadePath
{
    std::size_t idx_tx_ris = 0;
    std::size_t idx_ris_rx = 0;
    std::string label;
    Db power_db{};
    double delay_ns = 0.0;
    RxAngle aoa_rx;
    double phase_rad = 0.0;
};

// P_conv = P_n1 + P_n2 + F_RIS, all in dB.
inline Db power_cascade_db(Db p_n1, Db p_n2, Db f_ris)
{
    return p_n1 + p_n2 + f_ris;
}

// Model-minus-measured power difference in dB.
inline Db delta_p(Db p_conv, Db p_measured)
{
    return p_conv - p_measured;
}

std::vector<CascadePath> cascade_direct(const TxRisChannel &sub1, const RisRxChannel &sub2,
                                        const FrisFn &f_ris, const AntennaPattern &tx_pattern,
                                        const AntennaPattern &rx_pattern, ArrayElementOffset tx_offset,
                                        ArrayElementOffset rx_offset);

// Angle x delay grid of complex amplitudes. The angle axis holds the
// exact sparse path azimuths (sorted, degrees, frame fixed by the
// producing render call); each path's full amplitude sits in its nearest
// delay cell, same-cell paths combine coherently.
class GriddedCIR
{
  public:
    GriddedCIR() = default;
    GriddedCIR(std::vector<double> angle_axis_deg, DelayGrid grid, std::size_t num_bins);

    [[nodiscard]] const std::vector<double> &angle_axis_deg() const noexcept { return angles_; }
    [[nodiscard]] const DelayGrid &grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t num_bins() const noexcept { return num_bins_; }

    [[nodiscard]] std::complex<double> at(std::size_t angle_idx, std::size_t bin) const;
    void add(std::size_t angle_idx, std::size_t bin, std::complex<double> amp);

    // Planar row storage, kernel friendly.
    [[nodiscard]] const std::vector<double> &row_re(std::size_t angle_idx) const { return re_[angle_idx]; }
    [[nodiscard]] const std::vector<double> &row_im(std::size_t angle_idx) const { return im_[angle_idx]; }

  private:
    std::vector<double> angles_;
    DelayGrid grid_;
    std::size_t num_bins_ = 0;
    std::vector<std::vector<double>> re_, im_;
};

// Render a sub-channel to its grid with the terminal antenna and steering
// phase baked in (the gridded realizations carry those terms, the
// cascade then only adds the panel gain). Amplitude per path:
// 10^((P + F_terminal)/20) * exp(j(phase + steering)).
GriddedCIR render_tx_ris(const TxRisChannel &sub, const AntennaPattern &tx_pattern,
                         ArrayElementOffset tx_offset, const DelayGrid &grid);
GriddedCIR render_ris_rx(const RisRxChannel &sub, const AntennaPattern &rx_pattern,
                         ArrayElementOffset rx_offset, const DelayGrid &grid);

// Uniform angular axis start + k*step, k < count. Snapping render mode:
// each path lands in its nearest cell (wrap-aware when the axis closes
// the circle), for use with measured gain tables sampled on the same
// grid.
struct AngleGrid
{
    double start_deg = 0.0;
    double step_deg = 5.0;
    std::size_t count = 72;

    void validate() const;
    [[nodiscard]] std::vector<double> axis_deg() const;
    [[nodiscard]] std::size_t nearest_cell(double angle_deg) const;
};

GriddedCIR render_tx_ris(const TxRisChannel &sub, const AntennaPattern &tx_pattern,
                         ArrayElementOffset tx_offset, const DelayGrid &grid,
                         const AngleGrid &angles);
GriddedCIR render_ris_rx(const RisRxChannel &sub, const AntennaPattern &rx_pattern,
                         ArrayElementOffset rx_offset, const DelayGrid &grid,
                         const AngleGrid &angles);

// Rectangular table of panel gains over (theta_out, theta_in) grid
// points. Lookups off the grid throw lookup_error unless bilinear
// interpolation is enabled.
struct FrisTable
{
    std::vector<double> theta_out_deg; // sorted ascending
    std::vector<double> theta_in_deg;  // sorted ascending
    std::vector<Db> gain_db;           // row-major [out][in]
    bool interpolate = false;

    void validate() const;
    [[nodiscard]] Db at(RisAngle theta_out, RisAngle theta_in) const;
};

// Convolution form: for every (theta_out, theta_in) cell pair, convolve
// the two delay profiles, weight by the linear-amplitude panel gain and
// accumulate. Output spans num_bins1 + num_bins2 - 1 delay bins of the
// shared DelayGrid. The table overload requires the table axes to equal
// the grids' angle axes.
std::vector<std::complex<double>> cascade_convolution(const GriddedCIR &tx_ris, const GriddedCIR &ris_rx,
                                                      const FrisFn &f_ris);
std::vector<std::complex<double>> cascade_convolution(const GriddedCIR &tx_ris, const GriddedCIR &ris_rx,
                                                      const FrisTable &f_ris);

// Per-bin squared magnitude in dB; empty bins become the no-power sentinel.
std::vector<Db> cir_to_pdp(std::span<const std::complex<double>> cir);

// Delay-domain CIR of a cascade path set, each path at the nearest bin of
// its exact summed delay. For sounding a synthesized cascade.
std::vector<std::complex<double>> render_cascade_cir(const std::vector<CascadePath> &paths,
                                                     const DelayGrid &grid);

// PDP of the direct route discretized exactly like the gridded route:
// each cascade path lands at bin(tau_n1) + bin(tau_n2) of its parents.
// Comparable bin by bin against cir_to_pdp(cascade_convolution(...)).
std::vector<Db> binned_cascade_pdp(const std::vector<CascadePath> &paths, const TxRisChannel &sub1,
                                   const RisRxChannel &sub2, const DelayGrid &grid);

} // namespace riscade

#endif
