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

#ifndef riscade_csv_H
#define riscade_csv_H

#include "riscade/db.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace riscade::csv
{

// Comma-separated table with a mandatory header row. No quoting; fields
// are trimmed. Lines starting with '#' are comments.
struct Table
{
    std::string name; // for diagnostics
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a header column; schema_error when absent.
    [[nodiscard]] std::size_t column(const std::string &name) const;
    // schema_error unless the header is exactly these columns, in order.
    void require_header(const std::vector<std::string> &expected) const;
};

Table read_table(std::istream &is, const std::string &name);
Table read_table_file(const std::string &path);

// Write-temp-then-rename, so concurrent runs on distinct outputs never
// observe a half-written file.
void write_file_atomic(const std::string &path, const std::string &content);

double parse_double(const std::string &field, const std::string &context);
Db parse_db(const std::string &field, const std::string &context); // accepts "-inf"

std::string format_fixed(double v, int decimals);
std::string format_full(double v); // round-trip exact
std::string format_db_fixed(Db v, int decimals = 2);

} // namespace riscade::csv

#endif
