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

#include "riscade/channel_synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace riscade
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

double dist(Vec2 a, Vec2 b)
{
    return std::hypot(b.x - a.x, b.y - a.y);
}

// Math-convention azimuth of the direction from 'from' toward 'to'.
double bearing_deg(Vec2 from, Vec2 to)
{
    return std::atan2(to.y - from.y, to.x - from.x) * 180.0 / std::numbers::pi;
}

double free_space_db(double distance_m, double carrier_hz)
{
    const double lambda = speed_of_light_m_per_s / carrier_hz;
    return 20.0 * std::log10(lambda / (4.0 * std::numbers::pi * distance_m));
}

double propagation_phase_rad(double distance_m, double carrier_hz)
{
    const double lambda = speed_of_light_m_per_s / carrier_hz;
    double p = std::fmod(-two_pi * distance_m / lambda, two_pi);
    if (p < 0.0)
        p += two_pi;
    return p;
}

} // namespace

void ScenarioGeometry::validate() const
{
    if (!(height_m > 0.0))
        throw std::domain_error("ScenarioGeometry: height must be > 0");
    auto check = [](Vec2 a, Vec2 b, const char *what) {
        if (!(dist(a, b) > 0.0))
            throw std::domain_error(std::string("ScenarioGeometry: coincident points (") + what + ")");
    };
    check(tx, ris, "tx/ris");
    check(ris, rx, "ris/rx");
    check(tx, rx, "tx/rx");
    for (const Vec2 &s : scatterers)
    {
        check(tx, s, "tx/scatterer");
        check(ris, s, "ris/scatterer");
        check(rx, s, "rx/scatterer");
    }
}

void GBSMParams::validate() const
{
    if (num_clusters < 1 || paths_per_cluster < 1)
        throw std::domain_error("GBSMParams: cluster and path counts must be >= 1");
    if (!(delay_scale_ns > 0.0))
        throw std::domain_error("GBSMParams: delay scale must be > 0");
    if (!(angle_spread_deg > 0.0))
        throw std::domain_error("GBSMParams: angle spread must be > 0");
}

template <Side S>
SubChannel<S> geometric_paths(const ScenarioGeometry &geom, Db reflection_loss_db, double carrier_hz)
{
    geom.validate();
    if (!(carrier_hz > 0.0))
        throw std::domain_error("geometric_paths: carrier frequency must be > 0");

    // Endpoint A is the signal source of this hop, B its sink.
    const Vec2 a = (S == Side::tx_ris) ? geom.tx : geom.ris;
    const Vec2 b = (S == Side::tx_ris) ? geom.ris : geom.rx;

    SubChannel<S> sub;

    auto make_path = [&](const std::string &label, double total_m, Vec2 toward_from_a, Vec2 toward_from_b,
                         bool bounced) {
        PathOf<S> p;
        p.label = label;
        p.delay_ns = total_m / speed_of_light_m_per_s * 1.0e9;
        double pw = free_space_db(total_m, carrier_hz);
        if (bounced)
            pw -= reflection_loss_db.value();
        p.power_db = Db(pw);
        p.phase_rad = propagation_phase_rad(total_m, carrier_hz);
        if constexpr (S == Side::tx_ris)
        {
            p.aod = TxAngle(bearing_deg(a, toward_from_a));  // departure at the Tx
            p.aoa = RisAngle(bearing_deg(b, toward_from_b)); // theta_in at the RIS
        }
        else
        {
            p.aod = RisAngle(bearing_deg(a, toward_from_a));              // theta_out at the RIS
            p.aoa = from_math_degrees<Frame::rx>(bearing_deg(b, toward_from_b)); // arrival at the Rx
        }
        return p;
    };

    sub.paths.push_back(make_path("LOS", dist(a, b), b, a, false));

    std::size_t i = 0;
    for (const Vec2 &s : geom.scatterers)
    {
        ++i;
        sub.paths.push_back(make_path("S" + std::to_string(i), dist(a, s) + dist(s, b), s, s, true));
    }

    sub.validate();
    return sub;
}

template <Side S>
SubChannel<S> gbsm_generate(const GBSMParams &params)
{
    params.validate();

    // The side tag salts the stream so the two hops of one scenario seed
    // are statistically independent.
    const std::uint64_t salt = (S == Side::tx_ris) ? 0x742d726973ull : 0x7269732d7278ull;
    std::mt19937_64 rng(params.seed ^ salt);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> circle(0.0, 360.0);
    std::uniform_real_distribution<double> phase(0.0, two_pi);

    auto exp_draw = [&] {
        double u = unit(rng);
        while (u >= 1.0)
            u = unit(rng);
        return -params.delay_scale_ns * std::log1p(-u);
    };
    auto laplace_draw = [&] {
        double v = unit(rng);
        while (v == 0.0) // |u| = 1/2 would put the inverse CDF at -inf
            v = unit(rng);
        double u = v - 0.5;
        double mag = -params.angle_spread_deg * std::log1p(-2.0 * std::fabs(u));
        return (u < 0.0) ? -mag : mag;
    };

    const double split_db = 10.0 * std::log10(static_cast<double>(params.paths_per_cluster));

    SubChannel<S> sub;
    sub.paths.reserve(params.num_clusters * params.paths_per_cluster);
    for (std::size_t n = 0; n < params.num_clusters; ++n)
    {
        const double delay = exp_draw();
        const double center_aod = circle(rng);
        const double center_aoa = circle(rng);
        const double cluster_db =
            -params.per_cluster_power_decay_db.value() * (delay / params.delay_scale_ns);

        for (std::size_t m = 0; m < params.paths_per_cluster; ++m)
        {
            PathOf<S> p;
            p.label = "c" + std::to_string(n + 1) + "p" + std::to_string(m + 1);
            p.delay_ns = delay;
            p.power_db = Db(cluster_db - split_db);
            const double aod_deg = center_aod + laplace_draw();
            const double aoa_deg = center_aoa + laplace_draw();
            if constexpr (S == Side::tx_ris)
            {
                p.aod = TxAngle(aod_deg);
                p.aoa = RisAngle(aoa_deg);
            }
            else
            {
                p.aod = RisAngle(aod_deg);
                p.aoa = RxAngle(aoa_deg);
            }
            p.phase_rad = phase(rng);
            sub.paths.push_back(std::move(p));
        }
    }

    sub.validate();
    return sub;
}

template TxRisChannel geometric_paths<Side::tx_ris>(const ScenarioGeometry &, Db, double);
template RisRxChannel geometric_paths<Side::ris_rx>(const ScenarioGeometry &, Db, double);
template TxRisChannel gbsm_generate<Side::tx_ris>(const GBSMParams &);
template RisRxChannel gbsm_generate<Side::ris_rx>(const GBSMParams &);

} // namespace riscade
