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

#include <string>
#include <string_view>

#include "gptree/geometry.hpp"

namespace gptree {

/// Parses a 2-D POINT, LINESTRING or POLYGON literal. Throws ParseError with the
/// byte offset of the problem, or GeometryError when the shape is invalid.
Geometry parse_wkt(std::string_view text);

/// Shortest round-trip text for every coordinate.
std::string to_wkt(const Geometry& g);

}  // namespace gptree
