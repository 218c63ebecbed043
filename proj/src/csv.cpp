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

#include "riscade/csv.hpp"

#include "riscade/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>

namespace riscade::csv
{

namespace
{

std::string trim(const std::string &s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string &line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ','))
        out.push_back(trim(field));
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

} // namespace

std::size_t Table::column(const std::string &col) const
{
    auto it = std::find(header.begin(), header.end(), col);
    if (it == header.end())
        throw schema_error(name + ": missing column '" + col + "'");
    return static_cast<std::size_t>(it - header.begin());
}

void Table::require_header(const std::vector<std::string> &expected) const
{
    if (header != expected)
    {
        std::string want;
        for (const auto &c : expected)
            want += (want.empty() ? "" : ",") + c;
        std::string got;
        for (const auto &c : header)
            got += (got.empty() ? "" : ",") + c;
        throw schema_error(name + ": expected header '" + want + "', got '" + got + "'");
    }
}

Table read_table(std::istream &is, const std::string &name)
{
    Table t;
    t.name = name;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line))
    {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed.front() == '#')
            continue;
        auto fields = split_fields(trimmed);
        if (t.header.empty())
        {
            t.header = std::move(fields);
            continue;
        }
        if (fields.size() != t.header.size())
            throw parse_error(name + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(t.header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        t.rows.push_back(std::move(fields));
    }
    if (t.header.empty())
        throw parse_error(name + ": empty file");
    return t;
}

Table read_table_file(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw parse_error(path + ": cannot open");
    return read_table(is, path);
}

void write_file_atomic(const std::string &path, const std::string &content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw parse_error(tmp.string() + ": cannot open for writing");
        os << content;
        if (!os.flush())
            throw parse_error(tmp.string() + ": write failed");
    }
    fs::rename(tmp, target);
}

double parse_double(const std::string &field, const std::string &context)
{
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size())
            throw parse_error(context + ": trailing characters in '" + field + "'");
        return v;
    }
    catch (const std::invalid_argument &)
    {
        throw parse_error(context + ": '" + field + "' is not a number");
    }
    catch (const std::out_of_range &)
    {
        throw parse_error(context + ": '" + field + "' out of range");
    }
}

Db parse_db(const std::string &field, const std::string &context)
{
    if (field == "-inf")
        return Db::no_power();
    return Db(parse_double(field, context));
}

std::string format_fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string format_full(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_db_fixed(Db v, int decimals)
{
    if (v.is_no_power())
        return "-inf";
    return format_fixed(v.value(), decimals);
}

} // namespace riscade::csv
