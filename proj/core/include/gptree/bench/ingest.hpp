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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gptree/geometry.hpp"

namespace gptree::bench {

enum class InputFormat { WktLines, Csv };

/// Csv for a ".csv" extension, WktLines otherwise.
InputFormat detect_format(const std::filesystem::path& path);

struct IngestResult {
    std::vector<SpatialObject> objects;
    std::size_t records = 0;  // non-blank data lines seen
    std::size_t invalid = 0;
    /// "line N: reason" for every skipped line.
    std::vector<std::string> warnings;
};

/// Reads one geometry per line. WKT lines get sequential ids over the valid
/// lines; CSV input needs an "id,wkt" header and takes ids from the first
/// column. Invalid lines are skipped and reported. Throws DataError if the file
/// cannot be read or more than 10% of the records are invalid.
IngestResult ingest(std::istream& in, InputFormat format);
IngestResult ingest(const std::filesystem::path& path, InputFormat format);

/// Writes one WKT per line, in order.
void write_wkt_lines(std::ostream& out, const std::vector<SpatialObject>& objects);

}  // namespace gptree::bench
