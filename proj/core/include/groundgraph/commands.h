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

#ifndef GROUNDGRAPH_COMMANDS_H_
#define GROUNDGRAPH_COMMANDS_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "groundgraph/run_config.h"

namespace groundgraph {

// Each command returns the process exit status. Diagnostics go to `err`.

// Writes results.jsonl, graphs/<query_id>.json, report.json, report.txt,
// run.log and manifest.json under config.out_dir. Status 0 iff every sample
// produced a result.
int CmdRun(const RunConfig& config, std::ostream& out, std::ostream& err);

// Prints the scene graph of one sample as Json without running inference.
int CmdGraph(const RunConfig& config, const std::string& query_id, std::ostream& out,
             std::ostream& err);

// Writes sweep_<parameter>.json under config.out_dir and prints a table.
int CmdSweep(const RunConfig& config, const std::string& parameter,
             const std::vector<double>& values, std::ostream& out, std::ostream& err);

// "stats" | "purge".
int CmdCache(const std::filesystem::path& cache_dir, const std::string& action, std::ostream& out,
             std::ostream& err);

}  // namespace groundgraph

#endif  // GROUNDGRAPH_COMMANDS_H_
