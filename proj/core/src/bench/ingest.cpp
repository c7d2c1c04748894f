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

#include "gptree/bench/ingest.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>

#include "gptree/error.hpp"
#include "gptree/wkt.hpp"

namespace gptree::bench {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string_view unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

InputFormat detect_format(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? InputFormat::Csv : InputFormat::WktLines;
}

IngestResult ingest(std::istream& in, InputFormat format) {
    IngestResult out;
    std::unordered_set<ObjectId> ids;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = format == InputFormat::Csv;
    ObjectId next_id = 0;
    auto reject = [&](std::string reason) {
        ++out.invalid;
        out.warnings.push_back(fmt::format("line {}: {}", line_no, reason));
    };
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        if (header_pending) {
            header_pending = false;
            if (text.substr(0, 6) != "id,wkt") throw DataError("CSV input must start with an \"id,wkt\" header");
            continue;
        }
        ++out.records;
        ObjectId id = next_id;
        std::string_view wkt = text;
        if (format == InputFormat::Csv) {
            const auto comma = text.find(',');
            if (comma == std::string_view::npos) {
                reject("expected id,wkt");
                continue;
            }
            const auto id_text = trim(text.substr(0, comma));
            auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
            if (ec != std::errc() || ptr != id_text.data() + id_text.size()) {
                reject(fmt::format("invalid id '{}'", id_text));
                continue;
            }
            wkt = unquote(trim(text.substr(comma + 1)));
        }
        try {
            Geometry g = parse_wkt(wkt);
            if (!ids.insert(id).second) {
                reject(fmt::format("duplicate id {}", id));
                continue;
            }
            out.objects.push_back({id, std::move(g)});
            ++next_id;
        } catch (const Error& e) {
            reject(e.what());
        }
    }
    if (in.bad()) throw DataError("read error");
    if (out.records > 0 && out.invalid * 10 > out.records) {
        throw DataError(fmt::format("{} of {} records are invalid (limit 10%)", out.invalid, out.records));
    }
    return out;
}

IngestResult ingest(const std::filesystem::path& path, InputFormat format) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return ingest(in, format);
}

void write_wkt_lines(std::ostream& out, const std::vector<SpatialObject>& objects) {
    for (const auto& o : objects) out << to_wkt(o.geometry) << '\n';
}

}  // namespace gptree::bench
