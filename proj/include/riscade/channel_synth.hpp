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

#ifndef riscade_channel_synth_H
#define riscade_channel_synth_H

#include "riscade/antenna.hpp"
#include "riscade/path_types.hpp"

#include <cstdint>
#include <functional>
#include <numbers>

namespace riscade
{

inline constexpr double speed_of_light_m_per_s = 299792458.0;

struct Vec2
{
    double x = 0.0;
    double y = 0.0;
};

// Planar scenario layout in meters. Heights are fixed per the measurement
// setup and only validated, never used by the azimuth-only model.
struct ScenarioGeometry
{
    Vec2 tx;
    Vec2 ris;
    Vec2 rx;
    std::vector<Vec2> scatterers;
    double height_m = 1.5;

    void validate() const;
};

// Cluster statistics of the stochastic generator. Cluster excess delays
// are exponential with mean delay_scale_ns; cluster powers decay linearly
// in dB, per_cluster_power_decay_db per delay_scale_ns of excess delay;
// intra-cluster paths take Laplacian azimuth offsets (scale
// angle_spread_deg) around uniform cluster centers.
struct GBSMParams
{
    std::size_t num_clusters = 3;
    std::size_t paths_per_cluster = 20;
    double delay_scale_ns = 50.0;
    double angle_spread_deg = 5.0;
    Db per_cluster_power_decay_db = Db(6.0);
    std::uint64_t seed = 1;

    void validate() const;
};

// Deterministic paths of one sub-channel from scenario geometry: the LOS
// path plus one single-bounce path per scatterer. Powers are free-space
// spreading at carrier_hz (antenna gains excluded); bounce paths lose
// reflection_loss_db extra.
template <Side S>
SubChannel<S> geometric_paths(const ScenarioGeometry &geom, Db reflection_loss_db,
                              double carrier_hz = 6.9e9);

// Stochastic sub-channel, a pure function of (params, side).
template <Side S>
SubChannel<S> gbsm_generate(const GBSMParams &params);

// Steering phase of the scalar-offset linear array: 2*pi*|d|*cos(angle).
// cos() is even, so the result is frame independent.
template <Frame F>
inline double steering_phase(ArrayElementOffset offset, TaggedAngle<F> angle) noexcept
{
    return 2.0 * std::numbers::pi * offset.wavelengths * std::cos(angle.radians());
}

// Which end of a sub-channel an antenna sits at: local is the Tx or Rx
// terminal, remote is the RIS side.
enum class End
{
    local,
    remote
};

// Add a gain (evaluated at the chosen end's azimuth) to every path power.
template <Side S>
SubChannel<S> apply_gain(SubChannel<S> sub, const std::function<Db(PlanarAngle)> &gain, End end)
{
    for (auto &p : sub.paths)
    {
        PlanarAngle at;
        if constexpr (S == Side::tx_ris)
            at = (end == End::local) ? p.aod.value() : p.aoa.value();
        else
            at = (end == End::local) ? p.aoa.value() : p.aod.value();
        p.power_db += gain(at);
    }
    return sub;
}

template <Side S>
SubChannel<S> apply_antenna(SubChannel<S> sub, const AntennaPattern &pattern, End end)
{
    return apply_gain<S>(std::move(sub), [&pattern](PlanarAngle a) { return antenna_gain(pattern, a); }, end);
}

extern template TxRisChannel geometric_paths<Side::tx_ris>(const ScenarioGeometry &, Db, double);
extern template RisRxChannel geometric_paths<Side::ris_rx>(const ScenarioGeometry &, Db, double);
extern template TxRisChannel gbsm_generate<Side::tx_ris>(const GBSMParams &);
extern template RisRxChannel gbsm_generate<Side::ris_rx>(const GBSMParams &);

} // namespace riscade

#endif
