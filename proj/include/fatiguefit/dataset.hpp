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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatiguefit {

/// Raised for malformed or invalid input data. `row()` is the 1-based data
/// row (header excluded), or 0 when the problem is not tied to a row.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t row = 0);
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// One constant-amplitude fatigue test.
struct FatigueObservation {
    double s_max = 0.0;
    std::optional<double> stress_ratio;
    double cycles = 0.0;
    bool is_runout = false;
    std::optional<std::string> group;
    std::optional<double> s_eq_direct;

    bool is_failure() const noexcept { return !is_runout; }
    bool operator==(const FatigueObservation&) const = default;
};

struct FatigueDataset {
    std::vector<FatigueObservation> observations;
    std::string unit;
    std::string name;

    std::size_t size() const noexcept { return observations.size(); }
    std::size_t runout_count() const noexcept;
    std::size_t failure_count() const noexcept { return size() - runout_count(); }

    /// Throws DataError if any record or the dataset as a whole is invalid.
    void validate() const;

    bool operator==(const FatigueDataset&) const = default;
};

/// Maps the logical fields onto CSV header names. An empty name means the
/// column is not expected.
struct CsvSchema {
    std::string s_max = "s_max";
    std::string stress_ratio = "stress_ratio";
    std::string cycles = "cycles";
    std::string runout = "runout";
    std::string group = "group";
    std::string s_eq = "s_eq";
    std::string unit = "ksi";

    /// Apply a "field=Header" override. Throws std::invalid_argument for an
    /// unknown field.
    void set(const std::string& assignment);
};

FatigueDataset parse_dataset(std::istream& in, const CsvSchema& schema = {},
                             std::string name = {});
FatigueDataset load_dataset(const std::string& path, const CsvSchema& schema = {});

/// Writes the canonical-header CSV that parse_dataset reads back unchanged.
void write_dataset(std::ostream& out, const FatigueDataset& data);

/// Accepts 0/1 and true/false (any case). Throws std::invalid_argument.
bool parse_runout_flag(const std::string& cell);

}  // namespace fatiguefit
