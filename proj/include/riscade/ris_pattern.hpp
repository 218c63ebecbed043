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

#ifndef riscade_ris_pattern_H
#define riscade_ris_pattern_H

#include "riscade/angles.hpp"
#include "riscade/db.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

namespace riscade
{

// Physical description of the reflecting panel. The panel is mounted with
// its boresight at 90 degrees in the RIS frame (the scenario half-plane),
// elements along the east axis at element_spacing_wavelengths pitch, and
// a cos^q per-element power pattern about the panel normal.
struct RISPanel
{
    std::size_t rows = 32;
    std::size_t cols = 32;
    double element_spacing_wavelengths = 0.5;
    unsigned phase_bits = 1;
    double center_freq_hz = 6.9e9;
    double element_pattern_exponent = 1.0; // q

    void validate() const;
};

// Per-element phase states in radians, row-major rows x cols.
class Codebook
{
  public:
    Codebook() = default;
    Codebook(std::size_t rows, std::size_t cols, double fill = 0.0);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    [[nodiscard]] double at(std::size_t r, std::size_t c) const { return phases_[r * cols_ + c]; }
    double &at(std::size_t r, std::size_t c) { return phases_[r * cols_ + c]; }

    [[nodiscard]] const std::vector<double> &phases() const noexcept { return phases_; }

    // True when every entry is one of the 2^bits uniform states.
    [[nodiscard]] bool is_quantized(unsigned bits, double tol = 1e-12) const noexcept;

    // Plain-text matrix serialization: one row per line, space-separated
    // phases in radians; '#' starts a comment.
    void write(std::ostream &os) const;
    static Codebook read(std::istream &is);

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> phases_;
};

// Map each phase to the nearest of 2^bits uniformly spaced states on
// [0, 2*pi); exact midpoints resolve to the lower state.
Codebook quantize_phases(const Codebook &continuous, unsigned bits);

// Continuous anomalous-reflection profile: phi(x) = -k*x*(sin a_in + sin a_out)
// per element column (constant across rows; the model is azimuth-only),
// with a measured from the panel normal. Both angles must lie in the
// panel's front half-space.
Codebook anomalous_phase_profile(const RISPanel &panel, RisAngle theta_in, RisAngle theta_out_target);

// The profile above passed through quantize_phases(panel.phase_bits).
Codebook generate_anomalous_codebook(const RISPanel &panel, RisAngle theta_in, RisAngle theta_out_target);

// Equivalent panel radiation power gain in dB for one incidence/departure
// pair: |sum_e g(a_in) g(a_out) exp(j(phi_e + k x_e (sin a_in + sin a_out)))|^2
// with g = cos^q about the panel normal. Symmetric in the two angles
// (bit-exactly) and deterministic in all inputs. A fully cancelled sum
// returns the no-power sentinel.
Db f_ris_gain(const RISPanel &panel, const Codebook &codebook, RisAngle theta_in, RisAngle theta_out);

// Gain samples over a departure grid for one fixed incidence angle;
// values bit-identical to the equivalent f_ris_gain calls.
struct RadiationPatternTable
{
    RisAngle theta_in;
    std::vector<double> theta_out_deg;
    std::vector<Db> gain_db;
};

RadiationPatternTable pattern_table(const RISPanel &panel, const Codebook &codebook, RisAngle theta_in,
                                    const std::vector<RisAngle> &theta_out_grid);

// Gain provider used by the cascade engine.
using FrisFn = std::function<Db(RisAngle theta_out, RisAngle theta_in)>;

// FrisFn backed by a panel + codebook (column sums precomputed once;
// results bit-identical to f_ris_gain). offset_db shifts every gain, e.g.
// a panel loss.
FrisFn make_fris(RISPanel panel, Codebook codebook, Db offset_db = Db(0.0));

// FrisFn returning the same gain for every angle pair.
FrisFn make_fris_constant(Db gain_db);

} // namespace riscade

#endif
