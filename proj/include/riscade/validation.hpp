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
//
// Measured-table ingestion and the cascaded-power comparison table.
// CSV schemas (exact headers):
//   table2.csv   label,power_db,delay_ns,aoa_ris_deg
//   table3.csv   label,power_db,delay_ns,aod_ris_deg,aoa_rx_deg
//   fris.csv     pair_label,f_ris_db
//   measured.csv pair_label,power_db,power_no_ris_db
// Sub-channel/cascade/PADP CSVs produced by the CLI are documented in the
// README; loaders and writers for those live here as well.

#ifndef riscade_validation_H
#define riscade_validation_H

#include "riscade/cascade.hpp"
#include "riscade/path_types.hpp"
#include "riscade/sounding.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace riscade
{

struct MeasuredCascade
{
    Db power_db{};
    std::optional<Db> power_no_ris_db; // ingested and echoed, no model counterpart
};

struct MeasuredTables
{
    TxRisChannel tx_ris;
    RisRxChannel ris_rx;
    std::map<std::string, Db> f_ris_db;               // pair label -> panel gain
    std::map<std::string, MeasuredCascade> measured;  // pair label -> cascaded measurement
};

TxRisChannel load_table2(std::istream &is, const std::string &name);
RisRxChannel load_table3(std::istream &is, const std::string &name);
std::map<std::string, Db> load_fris(std::istream &is, const std::string &name);
std::map<std::string, MeasuredCascade> load_measured(std::istream &is, const std::string &name);

// Loads table2.csv, table3.csv, fris.csv and measured.csv from one directory.
MeasuredTables load_measured_tables(const std::string &dir);

// One comparison row. p_conv and delta_p are always re-derived here, never
// trusted from input.
struct ValidationRecord
{
    std::string label; // "<tx>-<rx>", e.g. "1-A"
    Db p_n1{};
    Db p_n2{};
    Db f_ris{};
    Db p_conv{};
    Db p_measured{};
    std::optional<Db> p_no_ris;
    Db delta_p{};
};

struct ValidationReport
{
    std::vector<ValidationRecord> records;
    std::vector<std::string> warnings;
    Db max_abs_delta_p{};
    Db min_abs_delta_p{};
};

// Build one record per (tx, rx) path pair, rx-major to match the usual
// table layout. With table_iv_as_printed (the default) the P_n2
// association of the labels "C" and "D" is exchanged, reproducing the
// printed comparison table, whose C/D power column is swapped relative to
// the sub-channel table; a warning records the exchange.
ValidationReport build_validation_table(const MeasuredTables &tables, bool table_iv_as_printed = true);

// Rendered CSV (2 dB decimals) of the report: header
// pair,p_n1_db,p_n2_db,f_ris_db,p_conv_db,p_measured_db,p_no_ris_db,delta_p_db
std::string validation_csv(const ValidationReport &report);

// Fixed-width console rendering with the summary block.
std::string validation_text(const ValidationReport &report);

// --- CLI-facing writers/loaders for synthesized products ---------------

std::string tx_ris_csv(const TxRisChannel &sub);
std::string ris_rx_csv(const RisRxChannel &sub);
TxRisChannel load_tx_ris_csv(std::istream &is, const std::string &name);
RisRxChannel load_ris_rx_csv(std::istream &is, const std::string &name);

std::string cascade_csv(const std::vector<CascadePath> &paths);
std::vector<CascadePath> load_cascade_csv(std::istream &is, const std::string &name);

std::string padp_csv(const PADP &padp);
PADP load_padp_csv(std::istream &is, const std::string &name);

std::string pattern_csv(const RadiationPatternTable &table);
std::string extracted_csv(const std::vector<ExtractedPath> &paths);

} // namespace riscade

#endif
