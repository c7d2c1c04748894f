/*
 * Copyright 2026 The GP-Tree Authors
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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gptree/bench/runner.hpp"

namespace gptree::bench {

enum class ExportFormat { Json, Csv };

/// Column order of the CSV export.
const std::vector<std::string>& csv_columns();

/// Header plus one row per report. Numbers use the shortest text that parses
/// back to the same value.
void write_csv(std::ostream& out, const std::vector<MetricsReport>& reports);
std::vector<MetricsReport> read_csv(std::istream& in);

void write_json(std::ostream& out, const std::vector<MetricsReport>& reports);

/// Throws DataError if the file cannot be written.
void export_reports(const std::vector<MetricsReport>& reports, ExportFormat format,
                    const std::filesystem::path& path);

}  // namespace gptree::bench
