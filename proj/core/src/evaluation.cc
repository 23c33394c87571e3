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

#include "groundgraph/evaluation.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "groundgraph/error.h"
#include "groundgraph/text_util.h"

namespace groundgraph {
namespace {

std::string IdString(const nlohmann::json& v, const char* key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorCode::kSchema, std::string("\"") + key + "\" must be a string or integer");
}

const nlohmann::json& Require(const nlohmann::json& rec, const char* key) {
  if (!rec.contains(key)) throw Error(ErrorCode::kSchema, std::string("missing \"") + key + "\"");
  return rec[key];
}

Sample ParseSample(const nlohmann::json& rec) {
  if (!rec.is_object()) throw Error(ErrorCode::kSchema, "record is not an object");
  Sample s;
  s.query_id = IdString(Require(rec, "query_id"), "query_id");
  s.image_id = IdString(Require(rec, "image_id"), "image_id");
  const auto& split = Require(rec, "split");
  const auto& query = Require(rec, "query");
  if (!split.is_string() || !query.is_string()) {
    throw Error(ErrorCode::kSchema, "\"split\" and \"query\" must be strings");
  }
  s.split = split.get<std::string>();
  s.query = query.get<std::string>();
  if (Trim(s.query).empty()) throw Error(ErrorCode::kSchema, "empty query");
  if (rec.contains("image_path")) {
    if (!rec["image_path"].is_string()) {
      throw Error(ErrorCode::kSchema, "\"image_path\" must be a string");
    }
    s.image_path = rec["image_path"].get<std::string>();
  } else {
    s.image_path = s.image_id + ".png";
  }
  const auto& gt = Require(rec, "gt_box");
  if (!gt.is_object() || !gt.contains("values") || !gt["values"].is_array() ||
      gt["values"].size() != 4) {
    throw Error(ErrorCode::kSchema, "\"gt_box\" needs \"values\" with 4 numbers");
  }
  std::array<double, 4> values{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!gt["values"][i].is_number()) throw Error(ErrorCode::kSchema, "box values must be numbers");
    values[i] = gt["values"][i].get<double>();
  }
  s.gt_box = MakeBox(ParseBoxForm(gt.value("form", std::string("xyxy"))), values);
  return s;
}

double Percent(int part, int whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

// Scores an aligned subset; empty subsets give an all-zero report.
SplitReport Reduce(const std::string& split,
                   const std::vector<std::pair<const SampleResult*, const Sample*>>& rows) {
  SplitReport r;
  r.split = split;
  r.count = static_cast<int>(rows.size());
  double iou_sum = 0.0;
  for (const auto& [result, sample] : rows) {
    if (result->failed()) {
      ++r.failed_count;
      continue;
    }
    if (result->fallback) ++r.fallback_count;
    iou_sum += IntersectionOverUnion(result->box, sample->gt_box);
    if (IsCorrect(result->box, sample->gt_box)) ++r.correct;
  }
  r.accuracy = Percent(r.correct, r.count);
  r.mean_iou = r.count == 0 ? 0.0 : iou_sum / r.count;
  return r;
}

std::vector<std::pair<const SampleResult*, const Sample*>> Align(
    std::span<const SampleResult> results, std::span<const Sample> samples) {
  std::map<std::string, const SampleResult*> by_id;
  for (const auto& r : results) {
    if (!by_id.emplace(r.query_id, &r).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate result for query " + r.query_id);
    }
  }
  if (by_id.size() != samples.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "results and samples differ in size (" + std::to_string(by_id.size()) + " vs " +
                    std::to_string(samples.size()) + ")");
  }
  std::vector<std::pair<const SampleResult*, const Sample*>> rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) {
    auto it = by_id.find(s.query_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kInvalidArgument, "no result for query " + s.query_id);
    }
    rows.emplace_back(it->second, &s);
  }
  return rows;
}

std::vector<std::string> QueryNouns(const std::string& text, const PosTagger& tagger) {
  std::vector<std::string> nouns;
  for (const auto& t : tagger.Tag(text)) {
    if (t.text.empty()) continue;
    if (t.tag == PosTag::kNoun || t.tag == PosTag::kPropn || t.tag == PosTag::kPron) {
      nouns.push_back(t.text);
    }
  }
  return nouns;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::vector<Sample> ParseDataset(std::istream& in, const std::string& split,
                                 const std::string& source) {
  std::vector<Sample> out;
  std::set<std::string> ids;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (Trim(line).empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    Sample s;
    try {
      s = ParseSample(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kSchema, where + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kSchema, where + ": " + e.what());
    }
    if (s.split != split) continue;
    if (!ids.insert(s.query_id).second) {
      throw Error(ErrorCode::kSchema, where + ": duplicate query_id " + s.query_id);
    }
    out.push_back(std::move(s));
  }
  if (out.empty()) throw Error(ErrorCode::kNotFound, "unknown split \"" + split + "\" in " + source);
  return out;
}

std::vector<Sample> LoadDataset(const std::filesystem::path& path, const std::string& split) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dataset " + path.string());
  return ParseDataset(in, split, path.string());
}

bool IsCorrect(const BBox& pred, const BBox& gt) {
  return IntersectionOverUnion(pred, gt) > kCorrectIou;
}

nlohmann::ordered_json ToJson(const SampleResult& r) {
  nlohmann::ordered_json j;
  j["query_id"] = r.query_id;
  j["image_id"] = r.image_id;
  if (r.failed()) {
    j["error"] = *r.error;
    return j;
  }
  j["target_index"] = r.target_index;
  const auto c = RoundedCorners(r.box);
  j["box"] = {c[0], c[1], c[2], c[3]};
  j["explanation"] = r.explanation;
  j["fallback"] = r.fallback;
  j["retried"] = r.retried;
  j["selection_fallback"] = r.selection_fallback;
  j["node_count"] = r.node_count;
  j["edge_count"] = r.edge_count;
  return j;
}

SampleResult SampleResultFromJson(const nlohmann::json& j) {
  SampleResult r;
  try {
    r.query_id = j.at("query_id").get<std::string>();
    r.image_id = j.at("image_id").get<std::string>();
    if (j.contains("error")) {
      r.error = j["error"].get<std::string>();
      return r;
    }
    r.target_index = j.at("target_index").get<int>();
    const auto& b = j.at("box");
    if (!b.is_array() || b.size() != 4) throw Error(ErrorCode::kSchema, "\"box\" needs 4 numbers");
    r.box = BBox{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
    r.explanation = j.value("explanation", std::string());
    r.fallback = j.value("fallback", false);
    r.retried = j.value("retried", false);
    r.selection_fallback = j.value("selection_fallback", false);
    r.node_count = j.value("node_count", 0);
    r.edge_count = j.value("edge_count", 0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("result record: ") + e.what());
  }
  return r;
}

SplitReport Top1Accuracy(std::span<const SampleResult> results, std::span<const Sample> samples,
                         const std::string& split) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidArgument, "empty split " + split);
  return Reduce(split, Align(results, samples));
}

std::map<std::string, int> NounFrequencies(std::span<const Sample> samples,
                                           const PosTagger& tagger) {
  std::map<std::string, int> freq;
  for (const auto& s : samples) {
    for (const auto& n : QueryNouns(s.query, tagger)) ++freq[n];
  }
  return freq;
}

std::string FrequencyBucketName(int frequency) {
  if (frequency > 200) return ">200";
  if (frequency > 100) return "100-200";
  return "<=100";
}

std::vector<Bucket> FrequencyBuckets(std::span<const SampleResult> results,
                                     std::span<const Sample> samples,
                                     const std::map<std::string, int>& frequencies,
                                     const PosTagger& tagger) {
  const auto rows = Align(results, samples);
  const std::array<std::string, 3> names = {">200", "100-200", "<=100"};
  std::array<std::vector<std::pair<const SampleResult*, const Sample*>>, 3> parts;
  std::vector<std::string> nounless;
  for (const auto& row : rows) {
    int best = -1;
    for (const auto& n : QueryNouns(row.second->query, tagger)) {
      auto it = frequencies.find(n);
      best = std::max(best, it == frequencies.end() ? 0 : it->second);
    }
    if (best < 0) nounless.push_back(row.second->query_id);
    const std::string name = FrequencyBucketName(std::max(best, 0));
    const auto slot = std::find(names.begin(), names.end(), name) - names.begin();
    parts[slot].push_back(row);
  }
  std::vector<Bucket> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    out.push_back({names[i], Reduce(names[i], parts[i]), {}});
  }
  out.back().flagged = std::move(nounless);
  return out;
}

std::string DensityBucketName(int node_count) {
  if (node_count < 5) return "[0,5)";
  if (node_count < 10) return "[5,10)";
  if (node_count < 15) return "[10,15)";
  if (node_count < 20) return "[15,20)";
  return ">=20";
}

std::vector<Bucket> DensityBuckets(std::span<const SampleResult> results,
                                   std::span<const Sample> samples) {
  const auto rows = Align(results, samples);
  const std::array<std::string, 5> names = {"[0,5)", "[5,10)", "[10,15)", "[15,20)", ">=20"};
  std::array<std::vector<std::pair<const SampleResult*, const Sample*>>, 5> parts;
  for (const auto& row : rows) {
    const std::string name = DensityBucketName(row.first->node_count);
    parts[std::find(names.begin(), names.end(), name) - names.begin()].push_back(row);
  }
  std::vector<Bucket> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    out.push_back({names[i], Reduce(names[i], parts[i]), {}});
  }
  return out;
}

CoverageReport DetectionCoverage(const CandidateMap& candidates, std::span<const Sample> samples) {
  CoverageReport c;
  c.total = static_cast<int>(samples.size());
  for (const auto& s : samples) {
    auto it = candidates.find(s.query_id);
    if (it == candidates.end()) {
      c.missing.push_back(s.query_id);
      continue;
    }
    if (std::any_of(it->second.begin(), it->second.end(),
                    [&](const BBox& b) { return IsCorrect(b, s.gt_box); })) {
      ++c.covered;
    }
  }
  c.percentage = Percent(c.covered, c.total);
  return c;
}

CandidateMap RawCandidates(const DetectionIndex& detections, std::span<const Sample> samples) {
  CandidateMap out;
  for (const auto& s : samples) {
    auto it = detections.find(s.image_id);
    if (it == detections.end()) continue;
    auto& boxes = out[s.query_id];
    for (const auto& d : it->second.detections) boxes.push_back(d.box);
  }
  return out;
}

nlohmann::ordered_json ToJson(const SplitReport& r) {
  nlohmann::ordered_json j;
  j["split"] = r.split;
  j["count"] = r.count;
  j["correct"] = r.correct;
  j["accuracy"] = r.accuracy;
  j["fallback_count"] = r.fallback_count;
  j["failed_count"] = r.failed_count;
  j["mean_iou"] = r.mean_iou;
  return j;
}

nlohmann::ordered_json ToJson(const Bucket& b) {
  nlohmann::ordered_json j;
  j["bucket"] = b.name;
  j["report"] = ToJson(b.report);
  j["flagged"] = b.flagged;
  return j;
}

nlohmann::ordered_json ToJson(const CoverageReport& c) {
  nlohmann::ordered_json j;
  j["total"] = c.total;
  j["covered"] = c.covered;
  j["percentage"] = c.percentage;
  j["missing"] = c.missing;
  return j;
}

std::string FormatReport(const SplitReport& report, std::span<const Bucket> frequency,
                         std::span<const Bucket> density) {
  std::ostringstream out;
  out << "split " << report.split << ": " << report.correct << "/" << report.count
      << " correct, accuracy " << Fixed(report.accuracy, 2) << "%, mean IoU "
      << Fixed(report.mean_iou, 4) << ", fallbacks " << report.fallback_count << ", failed "
      << report.failed_count << "\n";
  auto table = [&](const char* title, std::span<const Bucket> buckets) {
    if (buckets.empty()) return;
    out << title << "\n";
    for (const auto& b : buckets) {
      out << "  " << b.name << ": " << b.report.correct << "/" << b.report.count << " ("
          << Fixed(b.report.accuracy, 2) << "%)";
      if (!b.flagged.empty()) out << ", " << b.flagged.size() << " flagged";
      out << "\n";
    }
  };
  table("noun frequency", frequency);
  table("graph density", density);
  return out.str();
}

}  // namespace groundgraph
