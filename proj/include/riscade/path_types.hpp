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

#ifndef riscade_path_types_H
#define riscade_path_types_H

#include "riscade/angles.hpp"
#include "riscade/db.hpp"

#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace riscade
{

// Scalar element offset |d| of a uniform linear array, in wavelengths.
struct ArrayElementOffset
{
    double wavelengths = 0.0;

    ArrayElementOffset() = default;
    explicit ArrayElementOffset(double wl) : wavelengths(wl)
    {
        if (wl < 0.0)
            throw std::domain_error("ArrayElementOffset: offset must be >= 0");
    }
};

// One propagation path of the transmitter-to-RIS link. Power is relative
// (received over transmitted) with antenna gains stripped; the phase is
// the carrier phase of the complex path amplitude.
struct TxRisPath
{
    std::string label;
    Db power_db{};
    double delay_ns = 0.0;
    TxAngle aod;   // departure at the Tx
    RisAngle aoa;  // arrival at the RIS (theta_in)
    double phase_rad = 0.0;
};

// One propagation path of the RIS-to-receiver link.
struct RisRxPath
{
    std::string label;
    Db power_db{};
    double delay_ns = 0.0;
    RisAngle aod;  // departure at the RIS (theta_out)
    RxAngle aoa;   // arrival at the Rx
    double phase_rad = 0.0;
};

enum class Side
{
    tx_ris,
    ris_rx
};

template <Side S>
using PathOf = std::conditional_t<S == Side::tx_ris, TxRisPath, RisRxPath>;

// Sparse realization of one sub-channel: a non-empty set of paths whose
// angle frames are fixed by the side tag.
template <Side S>
struct SubChannel
{
    static constexpr Side side = S;
    std::vector<PathOf<S>> paths;

    void validate() const
    {
        if (paths.empty())
            throw std::domain_error("SubChannel: must hold at least one path");
        for (const auto &p : paths)
            if (p.delay_ns < 0.0)
                throw std::domain_error("SubChannel: negative path delay");
    }
};

using TxRisChannel = SubChannel<Side::tx_ris>;
using RisRxChannel = SubChannel<Side::ris_rx>;

} // namespace riscade

#endif
