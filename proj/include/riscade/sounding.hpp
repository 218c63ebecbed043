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
// Correlation channel sounding at complex baseband, one sample per chip,
// and the rotational-scan measurement procedure built on top of it.

#ifndef riscade_sounding_H
#define riscade_sounding_H

#include "riscade/antenna.hpp"
#include "riscade/cascade.hpp"
#include "riscade/delay_grid.hpp"
#include "riscade/path_types.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace riscade
{

struct SoundingConfig
{
    unsigned pn_order = 9;          // sequence length 2^order - 1 chips
    double chip_rate_hz = 400.0e6;  // chip duration = delay bin width
    double carrier_hz = 6.9e9;
    Db tx_power_dbm = Db(0.0);      // recorded; relative-power results do not depend on it
    Db noise_floor_db = Db::no_power(); // post-correlation per-bin noise power; sentinel = noiseless

    [[nodiscard]] std::size_t sequence_length() const noexcept { return (1u << pn_order) - 1u; }
    [[nodiscard]] double chip_ns() const noexcept { return 1.0e9 / chip_rate_hz; }
    [[nodiscard]] DelayGrid grid() const { return DelayGrid(chip_ns(), sequence_length()); }
    void validate() const;
};

// Maximal-length +-1 sequence for 2 <= order <= 16, from a fixed table of
// primitive feedback taps (register seeded all-ones, bit 1 maps to -1).
// Circular autocorrelation is exactly {N at lag 0, -1 elsewhere}.
std::vector<double> generate_mseq(unsigned order);

// Sound a delay-binned channel: drive the periodic chip stream through
// it, add complex white noise at the configured floor, circularly
// correlate against the reference sequence and normalize by its length.
// The channel must fit the unambiguous range (cir.size() <= sequence
// length), otherwise aliasing_error.
std::vector<std::complex<double>> sound_channel(std::span<const std::complex<double>> cir,
                                                const SoundingConfig &cfg, std::uint64_t seed = 0);

// Fold an over-long CIR modulo `length` bins: the circular sounder cannot
// distinguish delay D from D + length, and this makes that aliasing
// explicit.
std::vector<std::complex<double>> alias_fold(std::span<const std::complex<double>> cir,
                                             std::size_t length);

// Power-angular-delay profile: one sounded PDP row per horn pointing.
struct PADP
{
    double start_deg = 0.0;
    double step_deg = 5.0;
    DelayGrid grid;
    std::vector<std::vector<Db>> power; // [pointing][delay bin]

    [[nodiscard]] std::size_t num_pointings() const noexcept { return power.size(); }
    [[nodiscard]] double pointing_deg(std::size_t i) const noexcept
    {
        return PlanarAngle::wrap_360(start_deg + static_cast<double>(i) * step_deg);
    }
    // True when the pointings cover the full circle (the angle axis wraps).
    [[nodiscard]] bool circular() const noexcept;
};

// Frame-erased path view for scanning; aoa_deg and the horn pointing must
// share a frame (Rx frame for Rx-side scans, RIS frame at the panel).
struct ScanPath
{
    double aoa_deg = 0.0;
    double delay_ns = 0.0;
    Db power_db{};
    double phase_rad = 0.0;
};

std::vector<ScanPath> scan_paths(const RisRxChannel &sub);
std::vector<ScanPath> scan_paths(const std::vector<CascadePath> &cascade);

// Rotate the horn over [start, start + span) in step_deg increments (the
// end pointing is included unless the span closes the circle), re-weight
// every path by the horn gain at its arrival angle minus the horn peak
// (PADP cells are gain-stripped), sound, and stack the PDP rows. Each
// pointing derives its own seed (seed + index), so any execution order
// gives identical output.
PADP rotational_scan(std::span<const ScanPath> paths, const AntennaPattern &horn, double step_deg,
                     double span_deg, const SoundingConfig &cfg, std::uint64_t seed = 0,
                     double start_deg = 0.0);

struct ExtractedPath
{
    double pointing_deg = 0.0;
    double delay_ns = 0.0;
    Db power_db{};
};

// Greedy strongest-first 2-D peak picking: local maxima within
// threshold_db of the global maximum, suppressing anything closer than
// min_separation cells (both axes, angle wrapping on circular scans) to
// an already accepted peak. A threshold that excludes everything yields
// an empty result, not an error.
std::vector<ExtractedPath> extract_paths(const PADP &padp, Db threshold_db, std::size_t min_separation);

} // namespace riscade

#endif
