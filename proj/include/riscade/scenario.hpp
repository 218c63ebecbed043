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

#ifndef riscade_scenario_H
#define riscade_scenario_H

#include "riscade/antenna.hpp"
#include "riscade/channel_synth.hpp"
#include "riscade/ris_pattern.hpp"
#include "riscade/sounding.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace riscade
{

// Parsed scenario file (see docs/scenario_format.md for the grammar).
// Sections are optional; commands validate that the sections they need
// are present.
struct ScenarioFile
{
    std::uint64_t seed = 1;

    struct Geometry
    {
        Vec2 ris;
        Vec2 rx;
        std::vector<Vec2> tx;         // one or more transmitter placements
        std::vector<Vec2> scatterers;
        double height_m = 1.5;
    };
    std::optional<Geometry> geometry;

    struct Panel
    {
        RISPanel panel;
        Db loss_db = Db(0.0);
    };
    std::optional<Panel> panel;

    struct Antennas
    {
        AntennaPattern tx = AntennaPattern::isotropic();
        AntennaPattern rx = AntennaPattern::isotropic();
        AntennaPattern ris_probe = AntennaPattern::isotropic();
    };
    std::optional<Antennas> antennas;

    std::optional<SoundingConfig> sounding;

    struct Scan
    {
        double step_deg = 5.0;
        double span_deg = 360.0;
    };
    std::optional<Scan> scan;

    struct Cascade
    {
        Db reflection_loss_db = Db(6.0);
        ArrayElementOffset tx_offset;
        ArrayElementOffset rx_offset;
    };
    std::optional<Cascade> cascade;

    std::optional<GBSMParams> gbsm;

    // Single-transmitter geometry for geometric_paths; tx_index selects
    // among the placements (0-based).
    [[nodiscard]] ScenarioGeometry geometry_for_tx(std::size_t tx_index) const;
};

ScenarioFile load_scenario(const std::string &path);
ScenarioFile parse_scenario(std::istream &is, const std::string &name);

} // namespace riscade

#endif
