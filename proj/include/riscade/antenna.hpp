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

#ifndef riscade_antenna_H
#define riscade_antenna_H

#include "riscade/angles.hpp"
#include "riscade/db.hpp"

#include <stdexcept>

namespace riscade
{

// Azimuth-cut antenna model. Horns use the classic Gaussian (parabolic in
// dB) mainlobe, 12*(delta/HPBW)^2 dB of rolloff, which puts the -3 dB
// points exactly at +-HPBW/2, clipped at a configurable sidelobe floor
// relative to the peak. Omni and isotropic patterns are angle independent.
struct AntennaPattern
{
    enum class Kind
    {
        horn,
        omni,
        isotropic
    };

    Kind kind = Kind::isotropic;
    Db peak_gain_dbi{};          // gain at boresight
    double hpbw_deg = 0.0;       // horn only
    PlanarAngle pointing{};      // boresight azimuth, frame of the mounting site
    Db sidelobe_floor_rel_db = Db(-20.0); // horn floor relative to peak

    static AntennaPattern horn(Db peak_dbi, double hpbw_deg, PlanarAngle pointing = PlanarAngle(0.0),
                               Db floor_rel_db = Db(-20.0))
    {
        if (!(hpbw_deg > 0.0))
            throw std::domain_error("AntennaPattern: horn HPBW must be > 0");
        if (floor_rel_db.value() >= 0.0)
            throw std::domain_error("AntennaPattern: sidelobe floor must be below the peak");
        return AntennaPattern{Kind::horn, peak_dbi, hpbw_deg, pointing, floor_rel_db};
    }

    static AntennaPattern omni(Db gain_dbi)
    {
        return AntennaPattern{Kind::omni, gain_dbi, 0.0, PlanarAngle(0.0), Db(-20.0)};
    }

    static AntennaPattern isotropic(Db gain_dbi = Db(0.0))
    {
        return AntennaPattern{Kind::isotropic, gain_dbi, 0.0, PlanarAngle(0.0), Db(-20.0)};
    }

    [[nodiscard]] AntennaPattern pointed_at(PlanarAngle azimuth) const
    {
        AntennaPattern p = *this;
        p.pointing = azimuth;
        return p;
    }
};

// Gain in dBi at the given azimuth; azimuth and pattern pointing must be
// expressed in the same frame.
inline Db antenna_gain(const AntennaPattern &pattern, PlanarAngle azimuth) noexcept
{
    if (pattern.kind != AntennaPattern::Kind::horn)
        return pattern.peak_gain_dbi;
    double off = angular_separation_deg(azimuth, pattern.pointing) / pattern.hpbw_deg;
    double atten = 12.0 * off * off;
    double cap = -pattern.sidelobe_floor_rel_db.value();
    if (atten > cap)
        atten = cap;
    return Db(pattern.peak_gain_dbi.value() - atten);
}

} // namespace riscade

#endif
