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

#include "gptree/bench/export.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "gptree/error.hpp"

namespace gptree::bench {

namespace {

// Fields are plain identifiers or numbers except `label`, which is quoted when needed.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else if (c != '\r') {
            out.back() += c;
        }
    }
    return out;
}

template <typename T>
T parse_number(const std::string& s) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw DataError("malformed number '" + s + "' in CSV");
    return v;
}

// Each column is bound to one report field through a getter/setter pair.
struct Column {
    std::string name;
    std::function<std::string(const MetricsReport&)> get;
    std::function<void(MetricsReport&, const std::string&)> set;
};

template <typename T>
Column number(std::string name, T MetricsReport::*field) {
    return {std::move(name), [field](const MetricsReport& r) { return fmt::format("{}", r.*field); },
            [field](MetricsReport& r, const std::string& s) { r.*field = parse_number<T>(s); }};
}

template <typename T>
Column memory(std::string name, T MemoryBreakdown::*field) {
    return {std::move(name), [field](const MetricsReport& r) { return fmt::format("{}", r.memory.*field); },
            [field](MetricsReport& r, const std::string& s) { r.memory.*field = parse_number<T>(s); }};
}

Column text(std::string name, std::string MetricsReport::*field) {
    return {std::move(name), [field](const MetricsReport& r) { return csv_field(r.*field); },
            [field](MetricsReport& r, const std::string& s) { r.*field = s; }};
}

const std::vector<Column>& columns() {
    static const std::vector<Column> cols = {
        text("engine", &MetricsReport::engine),
        text("label", &MetricsReport::label),
        text("type", &MetricsReport::type),
        text("parameter", &MetricsReport::parameter),
        number("seg", &MetricsReport::seg),
        number("queries", &MetricsReport::queries),
        number("repetitions", &MetricsReport::repetitions),
        number("workers", &MetricsReport::workers),
        number("throughput_per_minute", &MetricsReport::throughput_per_minute),
        number("mean_latency_micros", &MetricsReport::mean_latency_micros),
        number("thr", &MetricsReport::thr),
        number("fhr", &MetricsReport::fhr),
        number("ucr", &MetricsReport::ucr),
        number("n_c", &MetricsReport::n_c),
        number("n_t", &MetricsReport::n_t),
        number("n_f", &MetricsReport::n_f),
        number("n_u", &MetricsReport::n_u),
        number("results", &MetricsReport::results),
        number("indexed_cells", &MetricsReport::indexed_cells),
        number("step3_cells", &MetricsReport::step3_cells),
        number("filter_micros", &MetricsReport::filter_micros),
        number("refine_micros", &MetricsReport::refine_micros),
        number("total_micros", &MetricsReport::total_micros),
        number("build_millis", &MetricsReport::build_millis),
        memory("tree_bytes", &MemoryBreakdown::tree),
        memory("lookup_bytes", &MemoryBreakdown::lookup),
        memory("ghsi_bytes", &MemoryBreakdown::ghsi),
        memory("memory_bytes", &MemoryBreakdown::total),
    };
    return cols;
}

}  // namespace

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& c : columns()) n.push_back(c.name);
        return n;
    }();
    return names;
}

void write_csv(std::ostream& out, const std::vector<MetricsReport>& reports) {
    const auto& cols = columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].name;
    out << '\n';
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].get(r);
        out << '\n';
    }
}

std::vector<MetricsReport> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty CSV");
    const auto header = split_csv(line);
    if (header != csv_columns()) throw DataError("unexpected CSV header");
    const auto& cols = columns();
    std::vector<MetricsReport> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != cols.size()) throw DataError("CSV row has the wrong number of fields");
        MetricsReport r;
        for (std::size_t i = 0; i < cols.size(); ++i) cols[i].set(r, fields[i]);
        out.push_back(std::move(r));
    }
    return out;
}

void write_json(std::ostream& out, const std::vector<MetricsReport>& reports) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        for (const auto& c : columns()) {
            const std::string v = c.get(r);
            if (c.name == "engine" || c.name == "label" || c.name == "type" || c.name == "parameter") {
                j[c.name] = v;
            } else {
                j[c.name] = nlohmann::ordered_json::parse(v);
            }
        }
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

void export_reports(const std::vector<MetricsReport>& reports, ExportFormat format,
                    const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    if (format == ExportFormat::Csv) {
        write_csv(out, reports);
    } else {
        write_json(out, reports);
    }
    if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace gptree::bench
