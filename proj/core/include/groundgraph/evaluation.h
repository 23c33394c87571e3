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

#ifndef GROUNDGRAPH_EVALUATION_H_
#define GROUNDGRAPH_EVALUATION_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundgraph/geometry.h"
#include "groundgraph/object_grounding.h"
#include "groundgraph/pos_tagger.h"

namespace groundgraph {

inline constexpr double kCorrectIou = 0.5;

struct Sample {
  std::string query_id;
  std::string image_id;
  std::string image_path;  // relative to the images root
  std::string split;
  std::string query;
  BBox gt_box;
};

// Records of other splits are skipped but still schema-checked. Throws
// Error(kSchema) with "source:line", Error(kNotFound) when the split has no
// records.
std::vector<Sample> ParseDataset(std::istream& in, const std::string& split,
                                 const std::string& source = "<stream>");
std::vector<Sample> LoadDataset(const std::filesystem::path& path, const std::string& split);

// IoU strictly above 0.5.
bool IsCorrect(const BBox& pred, const BBox& gt);

// One line of results.jsonl. A failed sample carries `error` and no box.
struct SampleResult {
  std::string query_id;
  std::string image_id;
  int target_index = 0;
  BBox box;
  std::string explanation;
  bool fallback = false;
  bool retried = false;
  bool selection_fallback = false;
  int node_count = 0;
  int edge_count = 0;
  std::optional<std::string> error;

  bool failed() const { return error.has_value(); }
};

nlohmann::ordered_json ToJson(const SampleResult& result);
SampleResult SampleResultFromJson(const nlohmann::json& j);

struct SplitReport {
  std::string split;
  int count = 0;
  int correct = 0;
  double accuracy = 0.0;  // percent
  int fallback_count = 0;
  int failed_count = 0;
  double mean_iou = 0.0;
};

// Pairs results with samples by query id. Failed results score IoU 0. Throws
// Error(kInvalidArgument) on an empty split or when the id sets differ.
SplitReport Top1Accuracy(std::span<const SampleResult> results, std::span<const Sample> samples,
                         const std::string& split);

struct Bucket {
  std::string name;
  SplitReport report;
  std::vector<std::string> flagged;  // query ids assigned by a fallback rule
};

// Occurrences of NOUN, PROPN and PRON tokens over all queries.
std::map<std::string, int> NounFrequencies(std::span<const Sample> samples,
                                           const PosTagger& tagger);

// ">200", "100-200" (inclusive of 200), "<=100".
std::string FrequencyBucketName(int frequency);

// Each sample goes by its most frequent noun; nounless samples land in "<=100"
// and are flagged.
std::vector<Bucket> FrequencyBuckets(std::span<const SampleResult> results,
                                     std::span<const Sample> samples,
                                     const std::map<std::string, int>& frequencies,
                                     const PosTagger& tagger);

// "[0,5)", "[5,10)", "[10,15)", "[15,20)", ">=20".
std::string DensityBucketName(int node_count);

// Node count taken from each result.
std::vector<Bucket> DensityBuckets(std::span<const SampleResult> results,
                                   std::span<const Sample> samples);

// Candidate boxes per query id.
using CandidateMap = std::map<std::string, std::vector<BBox>>;

struct CoverageReport {
  int total = 0;
  int covered = 0;
  double percentage = 0.0;
  std::vector<std::string> missing;  // query ids without any candidate entry
};

// A sample is covered when some candidate has IoU above 0.5 with its ground
// truth. Absent query ids count as uncovered and are listed in `missing`.
CoverageReport DetectionCoverage(const CandidateMap& candidates, std::span<const Sample> samples);

// Every detection of the sample's image; images without records are absent.
CandidateMap RawCandidates(const DetectionIndex& detections, std::span<const Sample> samples);

nlohmann::ordered_json ToJson(const SplitReport& report);
nlohmann::ordered_json ToJson(const Bucket& bucket);
nlohmann::ordered_json ToJson(const CoverageReport& coverage);

// Plain-text table of a report and its buckets.
std::string FormatReport(const SplitReport& report, std::span<const Bucket> frequency,
                         std::span<const Bucket> density);

}  // namespace groundgraph

#endif  // GROUNDGRAPH_EVALUATION_H_
