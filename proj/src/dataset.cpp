/*
 * Copyright (c) 2026, The fatiguefit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fatiguefit/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fatiguefit {

namespace {

std::string with_row(const std::string& what, std::size_t row)
{
    return row == 0 ? what : "row " + std::to_string(row) + ": " + what;
}

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// RFC 4180 subset: comma separator, double-quoted cells with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

double parse_number(const std::string& cell, const std::string& column, std::size_t row)
{
    double v = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    if (!cell.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw DataError("cannot parse '" + cell + "' in column '" + column + "'", row);
    return v;
}

void validate_observation(const FatigueObservation& o, std::size_t row)
{
    if (!(o.cycles > 0.0)) throw DataError("cycles must be positive", row);
    if (o.stress_ratio && !(*o.stress_ratio < 1.0))
        throw DataError("stress ratio must be < 1", row);
    if (o.s_eq_direct && !(*o.s_eq_direct > 0.0))
        throw DataError("equivalent stress must be positive", row);
    if (!o.s_eq_direct && !(o.s_max > 0.0))
        throw DataError("maximum stress must be positive", row);
}

}  // namespace

DataError::DataError(const std::string& what, std::size_t row)
    : std::runtime_error(with_row(what, row)), row_(row)
{
}

std::size_t FatigueDataset::runout_count() const noexcept
{
    return static_cast<std::size_t>(std::count_if(
        observations.begin(), observations.end(), [](const auto& o) { return o.is_runout; }));
}

void FatigueDataset::validate() const
{
    if (observations.empty()) throw DataError("dataset is empty");
    for (std::size_t i = 0; i < observations.size(); ++i)
        validate_observation(observations[i], i + 1);
    if (failure_count() == 0)
        throw DataError("dataset has no failures; the likelihood is unbounded");
}

void CsvSchema::set(const std::string& assignment)
{
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("column mapping must look like field=Header: " + assignment);
    std::string field = trim(assignment.substr(0, eq));
    std::string header = trim(assignment.substr(eq + 1));
    std::map<std::string, std::string*> fields{
        {"s_max", &s_max}, {"stress_ratio", &stress_ratio}, {"cycles", &cycles},
        {"runout", &runout}, {"group", &group},            {"s_eq", &s_eq},
        {"unit", &unit}};
    auto it = fields.find(field);
    if (it == fields.end()) throw std::invalid_argument("unknown column field: " + field);
    *it->second = header;
}

bool parse_runout_flag(const std::string& cell)
{
    auto v = lower(trim(cell));
    if (v == "1" || v == "true") return true;
    if (v == "0" || v == "false") return false;
    throw std::invalid_argument("run-out flag must be 0/1 or true/false, got '" + cell + "'");
}

FatigueDataset parse_dataset(std::istream& in, const CsvSchema& schema, std::string name)
{
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) {
            header = split_csv_line(line);
            break;
        }
    }
    if (header.empty()) throw DataError("missing header row");
    if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);

    auto find = [&](const std::string& col) -> std::optional<std::size_t> {
        if (col.empty()) return std::nullopt;
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == col) return i;
        return std::nullopt;
    };
    auto col_smax = find(schema.s_max);
    auto col_ratio = find(schema.stress_ratio);
    auto col_cycles = find(schema.cycles);
    auto col_runout = find(schema.runout);
    auto col_group = find(schema.group);
    auto col_seq = find(schema.s_eq);

    if (!col_cycles) throw DataError("missing required column '" + schema.cycles + "'");
    if (!col_runout) throw DataError("missing required column '" + schema.runout + "'");
    if (!col_smax && !col_seq)
        throw DataError("missing required column '" + schema.s_max + "' (or '" + schema.s_eq + "')");

    FatigueDataset data;
    data.unit = schema.unit;
    data.name = std::move(name);

    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        auto cells = split_csv_line(line);
        if (cells.size() > header.size())
            throw DataError("row has more cells than the header", row);
        cells.resize(header.size());

        auto cell = [&](std::optional<std::size_t> c) -> const std::string* {
            if (!c || cells[*c].empty()) return nullptr;
            return &cells[*c];
        };

        FatigueObservation o;
        if (auto* c = cell(col_cycles))
            o.cycles = parse_number(*c, schema.cycles, row);
        else
            throw DataError("empty cycles cell", row);
        if (auto* c = cell(col_runout)) {
            try {
                o.is_runout = parse_runout_flag(*c);
            } catch (const std::invalid_argument& e) {
                throw DataError(e.what(), row);
            }
        } else {
            throw DataError("empty run-out cell", row);
        }
        if (auto* c = cell(col_smax)) o.s_max = parse_number(*c, schema.s_max, row);
        if (auto* c = cell(col_ratio)) o.stress_ratio = parse_number(*c, schema.stress_ratio, row);
        if (auto* c = cell(col_seq)) o.s_eq_direct = parse_number(*c, schema.s_eq, row);
        if (auto* c = cell(col_group)) o.group = *c;
        if (!cell(col_smax) && !o.s_eq_direct)
            throw DataError("row needs a maximum stress or an equivalent stress", row);

        validate_observation(o, row);
        data.observations.push_back(std::move(o));
    }
    data.validate();
    return data;
}

FatigueDataset load_dataset(const std::string& path, const CsvSchema& schema)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file '" + path + "'");
    auto stem = path.substr(path.find_last_of("/\\") + 1);
    return parse_dataset(in, schema, stem.substr(0, stem.rfind('.')));
}

void write_dataset(std::ostream& out, const FatigueDataset& data)
{
    auto num = [](double v) {
        std::ostringstream s;
        s << std::setprecision(17) << v;
        return s.str();
    };
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos) return s;
        std::string r = "\"";
        for (char c : s) r += (c == '"') ? std::string("\"\"") : std::string(1, c);
        return r + "\"";
    };
    out << "s_max,stress_ratio,cycles,runout,group,s_eq\n";
    for (const auto& o : data.observations) {
        out << (o.s_max > 0.0 ? num(o.s_max) : std::string{}) << ','
            << (o.stress_ratio ? num(*o.stress_ratio) : std::string{}) << ',' << num(o.cycles)
            << ',' << (o.is_runout ? 1 : 0) << ',' << (o.group ? quote(*o.group) : std::string{})
            << ',' << (o.s_eq_direct ? num(*o.s_eq_direct) : std::string{}) << '\n';
    }
}

}  // namespace fatiguefit
