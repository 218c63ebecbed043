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

#ifndef riscade_delay_grid_H
#define riscade_delay_grid_H

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace riscade
{

// Uniform delay axis of the sounder. The bin width is the reciprocal of
// the measurement bandwidth (2.5 ns at 400 MHz), so measured delays land
// on bin centers b * bin_width.
struct DelayGrid
{
    double bin_width_ns = 2.5;
    std::size_t num_bins = 511;

    DelayGrid() = default;
    DelayGrid(double width_ns, std::size_t bins) : bin_width_ns(width_ns), num_bins(bins)
    {
        if (!(width_ns > 0.0))
            throw std::domain_error("DelayGrid: bin width must be > 0");
        if (bins == 0)
            throw std::domain_error("DelayGrid: need at least one bin");
    }

    static DelayGrid from_bandwidth_hz(double bandwidth_hz, std::size_t bins)
    {
        if (!(bandwidth_hz > 0.0))
            throw std::domain_error("DelayGrid: bandwidth must be > 0");
        return DelayGrid(1.0e9 / bandwidth_hz, bins);
    }

    [[nodiscard]] double bin_center_ns(std::size_t bin) const noexcept
    {
        return static_cast<double>(bin) * bin_width_ns;
    }
};

// Nearest bin of a delay; exact half-bin ties round toward larger delay.
inline std::size_t delay_to_bin(double delay_ns, const DelayGrid &grid)
{
    if (delay_ns < 0.0 || !std::isfinite(delay_ns))
        throw std::domain_error("delay_to_bin: delay must be finite and >= 0");
    double u = delay_ns / grid.bin_width_ns;
    double b = std::floor(u + 0.5); // floor(u + 1/2) rounds half up
    if (b >= static_cast<double>(grid.num_bins))
        throw std::out_of_range("delay_to_bin: delay beyond the grid");
    return static_cast<std::size_t>(b);
}

} // namespace riscade

#endif
