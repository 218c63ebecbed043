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

#ifndef riscade_angles_H
#define riscade_angles_H

#include <cmath>
#include <compare>
#include <numbers>

namespace riscade
{

// Azimuth normalized into [0, 360) degrees. Carries no sign convention;
// see the Frame tags below for that.
class PlanarAngle
{
  public:
    constexpr PlanarAngle() noexcept : deg_(0.0) {}
    explicit PlanarAngle(double degrees) noexcept : deg_(wrap_360(degrees)) {}

    [[nodiscard]] double degrees() const noexcept { return deg_; }
    [[nodiscard]] double radians() const noexcept { return deg_ * std::numbers::pi / 180.0; }

    auto operator<=>(const PlanarAngle &) const noexcept = default;

    static double wrap_360(double degrees) noexcept
    {
        double w = std::fmod(degrees, 360.0);
        if (w < 0.0)
            w += 360.0;
        if (w >= 360.0) // fmod rounding can land exactly on 360
            w = 0.0;
        return w;
    }

    // Signed wrap into (-180, 180]
    static double wrap_180(double degrees) noexcept
    {
        double w = wrap_360(degrees);
        return (w > 180.0) ? w - 360.0 : w;
    }

  private:
    double deg_;
};

// Unsigned angular distance between two azimuths of the same frame, in [0, 180].
inline double angular_separation_deg(PlanarAngle a, PlanarAngle b) noexcept
{
    return std::fabs(PlanarAngle::wrap_180(a.degrees() - b.degrees()));
}

// Sign conventions of the measurement geometry. RIS-side (and Tx-side)
// azimuths count counterclockwise-positive from east; Rx-side azimuths
// count clockwise-positive from east. Angles of different frames are
// distinct types, so cross-frame mixing does not compile.
enum class Frame
{
    ris, // counterclockwise-positive, east = 0
    tx,  // counterclockwise-positive, east = 0
    rx   // clockwise-positive, east = 0
};

template <Frame F>
class TaggedAngle
{
  public:
    constexpr TaggedAngle() noexcept = default;
    explicit TaggedAngle(double degrees) noexcept : value_(degrees) {}
    explicit TaggedAngle(PlanarAngle a) noexcept : value_(a) {}

    [[nodiscard]] double degrees() const noexcept { return value_.degrees(); }
    [[nodiscard]] double radians() const noexcept { return value_.radians(); }

    // Explicitly strips the frame tag. Keeps frame erasure greppable.
    [[nodiscard]] PlanarAngle value() const noexcept { return value_; }

    auto operator<=>(const TaggedAngle &) const noexcept = default;

  private:
    PlanarAngle value_;
};

using RisAngle = TaggedAngle<Frame::ris>;
using TxAngle = TaggedAngle<Frame::tx>;
using RxAngle = TaggedAngle<Frame::rx>;

template <Frame F>
inline double angular_separation_deg(TaggedAngle<F> a, TaggedAngle<F> b) noexcept
{
    return angular_separation_deg(a.value(), b.value());
}

// Math-convention azimuth (counterclockwise from +x) of a tagged angle.
// For ccw frames this is the identity; the clockwise Rx frame negates.
template <Frame F>
inline double math_degrees(TaggedAngle<F> a) noexcept
{
    if constexpr (F == Frame::rx)
        return PlanarAngle::wrap_360(-a.degrees());
    else
        return a.degrees();
}

// Inverse mapping: tag a math-convention azimuth with a frame.
template <Frame F>
inline TaggedAngle<F> from_math_degrees(double math_deg) noexcept
{
    if constexpr (F == Frame::rx)
        return TaggedAngle<F>(-math_deg);
    else
        return TaggedAngle<F>(math_deg);
}

} // namespace riscade

#endif
