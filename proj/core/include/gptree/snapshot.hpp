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
#include <utility>

#include "gptree/tree.hpp"

namespace gptree {

/// Binary index snapshot: magic "GPT1", format version, extent, decomposition
/// config, tree flags, the pre-order node stream of every entry and the lookup
/// table. Values are written little-endian.
void save_snapshot(const GPTree& tree, const LookupTable& table, std::ostream& out);
void save_snapshot(const GPTree& tree, const LookupTable& table, const std::filesystem::path& path);

/// Throws DataError on a truncated or foreign stream.
std::pair<GPTree, LookupTable> load_snapshot(std::istream& in);
std::pair<GPTree, LookupTable> load_snapshot(const std::filesystem::path& path);

}  // namespace gptree
