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

#ifndef riscade_db_H
#define riscade_db_H

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>

namespace riscade
{

// Decibel quantity (power ratio, gain in dBi, or level in dBm).
//
// A Db value is always a finite real number, except for the dedicated
// "no power" sentinel (negative infinity) used for empty delay bins and
// fully cancelled cells. The sentinel is inert: any dB arithmetic that
// touches it throws, so -inf can never leak into a sum such as Eq-style
// power cascading. Callers that want "zero linear power" semantics must
// branch on is_no_power() explicitly.
class Db
{
  public:
    constexpr Db() noexcept : value_(0.0) {}

    explicit Db(double v) : value_(v)
    {
        if (!std::isfinite(v))
            throw std::domain_error("Db: value must be finite (use Db::no_power() for the empty sentinel)");
    }

    static constexpr Db no_power() noexcept
    {
        return Db(sentinel_tag{});
    }

    [[nodiscard]] constexpr double value() const noexcept { return value_; }
    [[nodiscard]] constexpr bool is_no_power() const noexcept { return value_ == -std::numeric_limits<double>::infinity(); }

    constexpr auto operator<=>(const Db &) const noexcept = default;

    Db operator+(Db rhs) const { return Db(checked() + rhs.checked()); }
    Db operator-(Db rhs) const { return Db(checked() - rhs.checked()); }
    Db operator-() const { return Db(-checked()); }

    Db &operator+=(Db rhs) { return *this = *this + rhs; }
    Db &operator-=(Db rhs) { return *this = *this - rhs; }

  private:
    struct sentinel_tag
    {
    };
    constexpr explicit Db(sentinel_tag) noexcept : value_(-std::numeric_limits<double>::infinity()) {}

    double checked() const
    {
        if (is_no_power())
            throw std::domain_error("Db: arithmetic on the no-power sentinel");
        return value_;
    }

    double value_;
};

// 10*log10(x); x must be strictly positive.
inline Db db_from_linear(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("db_from_linear: input must be > 0");
    return Db(10.0 * std::log10(x));
}

// Inverse of db_from_linear; the no-power sentinel maps to exactly 0.
inline double linear_from_db(Db d) noexcept
{
    if (d.is_no_power())
        return 0.0;
    return std::pow(10.0, d.value() * 0.1);
}

// Amplitude (voltage) ratio of a power quantity: 10^(dB/20).
inline double amplitude_from_db(Db d) noexcept
{
    if (d.is_no_power())
        return 0.0;
    return std::pow(10.0, d.value() * 0.05);
}

inline Db abs(Db d)
{
    return Db(std::fabs(d.value()));
}

} // namespace riscade

#endif
