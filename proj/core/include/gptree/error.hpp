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
#include <stdexcept>
#include <string>

namespace gptree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed WKT or CSV text. `position` is the byte offset of the failure.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

/// A geometry that violates a structural invariant (open ring, too few points, ...).
class GeometryError : public Error {
  public:
    using Error::Error;
};

/// Input data that cannot be indexed: duplicate ids, objects outside the extent, bad files.
class DataError : public Error {
  public:
    using Error::Error;
};

/// An engine returned an answer that differs from the brute-force oracle.
class CorrectnessError : public Error {
  public:
    CorrectnessError(const std::string& what, std::size_t query_id)
        : Error(what), query_id_(query_id) {}

    std::size_t query_id() const noexcept { return query_id_; }

  private:
    std::size_t query_id_;
};

}  // namespace gptree
