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

#ifndef GROUNDGRAPH_ERROR_H_
#define GROUNDGRAPH_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace groundgraph {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kSchema,
  kTruncated,
  kNotFound,
  kConfig,
  kTransport,
  kHttpStatus,
  kCacheCorrupt,
  kNoScript,
  kEmptyNameSet,
  kImage,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries a code so callers can tell
// e.g. a corrupt cache entry apart from a backend that went away.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace groundgraph

#endif  // GROUNDGRAPH_ERROR_H_
