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

#include "gptree/wkt.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <vector>

#include "gptree/error.hpp"

namespace gptree {

namespace {

class Reader {
  public:
    explicit Reader(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    std::string keyword() {
        skip_space();
        std::string word;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            word.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(text_[pos_]))));
            ++pos_;
        }
        if (word.empty()) fail("expected geometry keyword");
        return word;
    }

    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    double number() {
        skip_space();
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        if (begin < end && *begin == '+') ++begin;
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc()) fail("expected number");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return value;
    }

    Coordinate coordinate() {
        const double x = number();
        const double y = number();
        if (!peek(',') && !peek(')')) fail("only 2-D coordinates are supported");
        return {x, y};
    }

    std::vector<Coordinate> coordinate_list() {
        expect('(');
        std::vector<Coordinate> coords{coordinate()};
        while (peek(',')) {
            ++pos_;
            coords.push_back(coordinate());
        }
        expect(')');
        return coords;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

void append_coords(std::string& out, const std::vector<Coordinate>& coords) {
    out += '(';
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i > 0) out += ", ";
        fmt::format_to(std::back_inserter(out), "{} {}", coords[i].x, coords[i].y);
    }
    out += ')';
}

}  // namespace

Geometry parse_wkt(std::string_view text) {
    Reader reader(text);
    const std::string kind = reader.keyword();
    Geometry result;
    if (kind == "POINT") {
        reader.expect('(');
        const Coordinate c = reader.coordinate();
        reader.expect(')');
        result = Geometry::point(c);
    } else if (kind == "LINESTRING") {
        result = Geometry::line_string(reader.coordinate_list());
    } else if (kind == "POLYGON") {
        reader.expect('(');
        std::vector<Geometry::Ring> rings{reader.coordinate_list()};
        while (reader.peek(',')) {
            reader.expect(',');
            rings.push_back(reader.coordinate_list());
        }
        reader.expect(')');
        result = Geometry::polygon(std::move(rings));
    } else {
        reader.fail("unsupported geometry type " + kind);
    }
    if (!reader.at_end()) reader.fail("trailing characters");
    return result;
}

std::string to_wkt(const Geometry& g) {
    std::string out = to_string(g.kind());
    out += ' ';
    switch (g.kind()) {
        case GeometryKind::Point:
            fmt::format_to(std::back_inserter(out), "({} {})", g.first_coordinate().x,
                           g.first_coordinate().y);
            break;
        case GeometryKind::LineString: append_coords(out, g.parts().front()); break;
        case GeometryKind::Polygon:
            out += '(';
            for (std::size_t i = 0; i < g.parts().size(); ++i) {
                if (i > 0) out += ", ";
                append_coords(out, g.parts()[i]);
            }
            out += ')';
            break;
    }
    return out;
}

}  // namespace gptree
