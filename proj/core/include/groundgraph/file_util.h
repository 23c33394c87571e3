// Copyright 2026 The GroundGraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GROUNDGRAPH_FILE_UTIL_H_
#define GROUNDGRAPH_FILE_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace groundgraph {

// Writes to a sibling temporary file, then renames over `path`. Parent
// directories are created. Throws Error(kIo).
void WriteFileAtomic(const std::filesystem::path& path, std::string_view content);

// Throws Error(kIo).
std::string ReadFile(const std::filesystem::path& path);

// Keeps [A-Za-z0-9._-]; anything else becomes '_'.
std::string SafeFileStem(std::string_view id);

// Current UTC time as 2026-01-31T12:00:00.123Z.
std::string UtcTimestamp();

}  // namespace groundgraph

#endif  // GROUNDGRAPH_FILE_UTIL_H_
