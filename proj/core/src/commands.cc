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

#include "groundgraph/commands.h"

#include <chrono>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "groundgraph/cache_store.h"
#include "groundgraph/error.h"
#include "groundgraph/file_util.h"
#include "groundgraph/pipeline.h"

namespace groundgraph {
namespace {

namespace fs = std::filesystem;

std::string Dump(const nlohmann::ordered_json& j) {
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::string Compact(const nlohmann::ordered_json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace

int CmdRun(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const std::string started = UtcTimestamp();
    const auto t0 = std::chrono::steady_clock::now();
    Pipeline pipeline(config);
    const StageParams params = pipeline.default_params();
    const auto outcomes = pipeline.RunAll(params);

    std::string results;
    std::string log;
    int failed = 0;
    for (const auto& o : outcomes) {
      results += Compact(ToJson(o.result)) + "\n";
      for (const auto& w : o.warnings) log += o.result.query_id + ": warning: " + w + "\n";
      if (o.result.failed()) {
        ++failed;
        log += o.result.query_id + ": error: " + *o.result.error + "\n";
      }
      if (o.graph) {
        WriteFileAtomic(config.out_dir / "graphs" / (SafeFileStem(o.result.query_id) + ".json"),
                        Serialize(*o.graph, GraphForm::kJson) + "\n");
      }
    }
    WriteFileAtomic(config.out_dir / "results.jsonl", results);
    const auto report = BuildRunReport(pipeline, params, outcomes);
    WriteFileAtomic(config.out_dir / "report.json", Dump(report));
    const std::string text = FormatRunReport(report);
    WriteFileAtomic(config.out_dir / "report.txt", text);

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    nlohmann::ordered_json manifest;
    manifest["started"] = started;
    manifest["finished"] = UtcTimestamp();
    manifest["seconds"] = seconds;
    manifest["samples"] = outcomes.size();
    manifest["failed"] = failed;
    manifest["backend_calls"] = pipeline.backend_calls();
    manifest["cache_hits"] = pipeline.cache_hits();
    manifest["outputs"] = {"results.jsonl", "graphs/", "report.json", "report.txt", "run.log"};
    WriteFileAtomic(config.out_dir / "manifest.json", Dump(manifest));
    WriteFileAtomic(config.out_dir / "run.log", log);

    out << text;
    out << "backend calls " << pipeline.backend_calls() << ", cache hits "
        << pipeline.cache_hits() << "\n";
    if (failed > 0) {
      err << failed << " sample(s) failed; see " << (config.out_dir / "run.log").string() << "\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int CmdGraph(const RunConfig& config, const std::string& query_id, std::ostream& out,
             std::ostream& err) {
  try {
    Pipeline pipeline(config);
    const Sample& sample = pipeline.FindSample(query_id);
    const SampleOutcome o = pipeline.RunSample(sample, pipeline.default_params(), true);
    for (const auto& w : o.warnings) err << "warning: " << w << "\n";
    if (o.result.failed()) {
      err << "error: " << *o.result.error << "\n";
      return 1;
    }
    if (o.result.selection_fallback) err << "note: selection fell back to all detections\n";
    out << Serialize(*o.graph, GraphForm::kJson) << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int CmdSweep(const RunConfig& config, const std::string& parameter,
             const std::vector<double>& values, std::ostream& out, std::ostream& err) {
  try {
    const SweepParameter p = ParseSweepParameter(parameter);
    Pipeline pipeline(config);
    const auto rows = Sweep(pipeline, p, values);
    WriteFileAtomic(config.out_dir / ("sweep_" + parameter + ".json"),
                    Dump(SweepToJson(pipeline, p, rows)));
    int failed = 0;
    for (const auto& r : rows) {
      int selected = 0;
      int pairs = 0;
      for (int n : r.selected) selected += n;
      for (int n : r.pairs) pairs += n;
      char line[160];
      std::snprintf(line, sizeof(line), "%s=%.3f  accuracy %.2f%%  selected %d  pairs %d\n",
                    parameter.c_str(), r.value, r.report.accuracy, selected, pairs);
      out << line;
      failed += r.report.failed_count;
    }
    return failed > 0 ? 1 : 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int CmdCache(const fs::path& cache_dir, const std::string& action, std::ostream& out,
             std::ostream& err) {
  try {
    if (cache_dir.empty()) throw Error(ErrorCode::kConfig, "cache_dir is not set");
    CacheStore store(cache_dir);
    if (action == "purge") {
      store.Purge();
    } else if (action != "stats") {
      throw Error(ErrorCode::kConfig, "unknown cache action \"" + action + "\"");
    }
    const CacheStats stats = store.Stats();
    out << "entries " << stats.entries << "\nbytes " << stats.bytes << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace groundgraph
