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

#include "groundgraph/error.h"

namespace groundgraph {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kTransport: return "transport";
    case ErrorCode::kHttpStatus: return "http_status";
    case ErrorCode::kCacheCorrupt: return "cache_corrupt";
    case ErrorCode::kNoScript: return "no_script";
    case ErrorCode::kEmptyNameSet: return "empty_name_set";
    case ErrorCode::kImage: return "image";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace groundgraph
