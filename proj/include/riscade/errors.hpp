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

#ifndef riscade_errors_H
#define riscade_errors_H

#include <stdexcept>
#include <string>

namespace riscade
{

// Malformed input file (scenario or CSV); message carries file/line context.
class parse_error : public std::runtime_error
{
  public:
    explicit parse_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Structurally valid file whose columns/labels violate a documented schema.
class schema_error : public std::runtime_error
{
  public:
    explicit schema_error(const std::string &msg) : std::runtime_error(msg) {}
};

// A required F_RIS sample is absent and interpolation is disabled.
class lookup_error : public std::runtime_error
{
  public:
    explicit lookup_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Grid axes of two operands do not match.
class dimension_error : public std::runtime_error
{
  public:
    explicit dimension_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Channel delay span exceeds the sounder's unambiguous range.
class aliasing_error : public std::runtime_error
{
  public:
    explicit aliasing_error(const std::string &msg) : std::runtime_error(msg) {}
};

// A validation tolerance gate failed (CLI exit code 2).
class tolerance_error : public std::runtime_error
{
  public:
    explicit tolerance_error(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace riscade

#endif
