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

#include "groundgraph/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <future>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "groundgraph/cache_store.h"
#include "groundgraph/error.h"
#include "groundgraph/http_backend.h"
#include "groundgraph/image.h"
#include "groundgraph/inference.h"
#include "groundgraph/mock_backend.h"

namespace groundgraph {
namespace {

// In-process memo in front of everything else, keyed like the on-disk cache.
// Concurrent identical requests share one call.
class MemoChatBackend : public ChatBackend {
 public:
  explicit MemoChatBackend(ChatBackend& inner) : inner_(inner) {}

  ChatResponse Chat(const ChatRequest& request) override {
    const std::string key = CacheKey(inner_.model_id(), request);
    std::promise<std::string> promise;
    std::shared_future<std::string> pending;
    {
      std::lock_guard lock(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) {
        pending = it->second;
      } else {
        memo_.emplace(key, promise.get_future().share());
      }
    }
    if (pending.valid()) return {pending.get(), true};
    try {
      ChatResponse response = inner_.Chat(request);
      promise.set_value(response.text);
      return response;
    } catch (...) {
      promise.set_exception(std::current_exception());
      std::lock_guard lock(mu_);
      memo_.erase(key);
      throw;
    }
  }
  const std::string& model_id() const override { return inner_.model_id(); }
  bool vision_capable() const override { return inner_.vision_capable(); }

 private:
  ChatBackend& inner_;
  std::mutex mu_;
  std::map<std::string, std::shared_future<std::string>> memo_;
};

// Counting, optional persistent cache, then the in-process memo.
struct RoleStack {
  RoleStack(ChatBackend& inner, CacheStore* store) : counting(inner) {
    ChatBackend* below = &counting;
    if (store != nullptr) {
      cached = std::make_unique<CachedChatBackend>(counting, store);
      below = cached.get();
    }
    memo = std::make_unique<MemoChatBackend>(*below);
  }
  ChatBackend& top() { return *memo; }
  int hits() const { return cached ? cached->hits() : 0; }

  CountingBackend counting;
  std::unique_ptr<CachedChatBackend> cached;
  std::unique_ptr<MemoChatBackend> memo;
};

struct Analysis {
  QueryNames names;
  std::vector<std::string> warnings;
};

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

struct Pipeline::Impl {
  RunConfig config;
  std::vector<Sample> samples;
  DetectionIndex detections;
  EmbeddingTable table;
  std::optional<CategoryList> categories;
  std::optional<PromptSet> prompts;
  LexiconTagger tagger;

  std::unique_ptr<ChatBackend> vlm_inner;
  std::unique_ptr<ChatBackend> llm_inner;
  std::unique_ptr<CacheStore> store;
  std::unique_ptr<RoleStack> vlm;
  std::unique_ptr<RoleStack> llm;

  std::mutex analysis_mu;
  std::map<std::string, Analysis> analyses;

  Analysis Analyze(const Sample& sample, const Image& image) {
    {
      std::lock_guard lock(analysis_mu);
      if (auto it = analyses.find(sample.query_id); it != analyses.end()) return it->second;
    }
    const Query query{sample.query_id, sample.query};
    Analysis a;
    const auto nouns = ExtractNouns(query, tagger);
    const auto cats = PredictCategories(nouns, *categories, table, config.min_category_similarity);
    const auto subjects =
        InferSubjects(query, image, vlm->top(), *prompts, config.vlm.sampling).subjects;
    if (subjects.empty()) a.warnings.push_back("subject inference returned no subject");
    try {
      a.names = BuildNameSet(nouns, cats, subjects);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyNameSet) throw;
      a.warnings.push_back("query produced no object names");
    }
    std::lock_guard lock(analysis_mu);
    return analyses.emplace(sample.query_id, std::move(a)).first->second;
  }
};

Pipeline::Pipeline(const RunConfig& config) : impl_(std::make_unique<Impl>()) {
  config.Validate();
  Impl& m = *impl_;
  m.config = config;
  m.samples = LoadDataset(config.dataset, config.split);
  m.detections = LoadDetections(config.detections);
  EmbeddingLoadOptions opts;
  opts.limit = config.embeddings_limit;
  m.table = EmbeddingTable::Load(config.embeddings, opts);
  m.categories = config.categories.empty() ? CategoryList::Coco()
                                           : CategoryList::Load(config.categories);
  m.prompts = config.prompts_dir.empty() ? PromptSet::Defaults()
                                         : PromptSet::Load(config.prompts_dir);
  if (!config.lexicon.empty()) m.tagger.LoadLexicon(config.lexicon);

  if (!config.mock_script.empty()) {
    const MockScript script = MockScript::Load(config.mock_script);
    m.vlm_inner = std::make_unique<MockChatBackend>(script);
    m.llm_inner = std::make_unique<MockChatBackend>(script);
  } else {
    m.vlm_inner = std::make_unique<HttpChatBackend>(config.vlm.backend);
    m.llm_inner = std::make_unique<HttpChatBackend>(config.llm.backend);
  }
  if (!config.cache_dir.empty()) m.store = std::make_unique<CacheStore>(config.cache_dir);
  m.vlm = std::make_unique<RoleStack>(*m.vlm_inner, m.store.get());
  m.llm = std::make_unique<RoleStack>(*m.llm_inner, m.store.get());
}

Pipeline::~Pipeline() = default;

const RunConfig& Pipeline::config() const { return impl_->config; }
const std::vector<Sample>& Pipeline::samples() const { return impl_->samples; }
const DetectionIndex& Pipeline::detections() const { return impl_->detections; }
const EmbeddingTable& Pipeline::table() const { return impl_->table; }
const PosTagger& Pipeline::tagger() const { return impl_->tagger; }

StageParams Pipeline::default_params() const {
  return {impl_->config.tau, impl_->config.theta};
}

const Sample& Pipeline::FindSample(const std::string& query_id) const {
  for (const auto& s : impl_->samples) {
    if (s.query_id == query_id) return s;
  }
  throw Error(ErrorCode::kNotFound,
              "no sample \"" + query_id + "\" in split " + impl_->config.split);
}

SampleOutcome Pipeline::RunSample(const Sample& sample, const StageParams& params,
                                  bool stop_before_inference) {
  Impl& m = *impl_;
  SampleOutcome out;
  out.result.query_id = sample.query_id;
  out.result.image_id = sample.image_id;
  try {
    const Image image = Image::Load(m.config.images_root / sample.image_path);
    Analysis analysis = m.Analyze(sample, image);
    out.names = analysis.names;
    out.warnings = std::move(analysis.warnings);

    SelectionConfig selection_config{params.tau, m.config.selection_fallback};
    selection_config.Validate();
    const DetectionSet dets = DetectionsFor(m.detections, sample.image_id);
    Selection selection = SelectObjects(dets, out.names, selection_config, m.table);
    if (selection.objects.empty()) {
      throw Error(ErrorCode::kNotFound, "no candidate objects for image " + sample.image_id);
    }
    if (selection.fallback) {
      out.warnings.push_back("no detection matched the query names; using all " +
                             std::to_string(selection.objects.size()) + " detections");
    }
    for (const auto& d : selection.objects) out.selected_boxes.push_back(d.box);
    out.result.selection_fallback = selection.fallback;

    SceneGraphOptions options;
    options.interaction.theta = params.theta;
    options.interaction.Validate();
    out.candidate_pairs = static_cast<int>(
        CandidatePairs(AssignNodes(selection.objects), options.interaction).size());
    options.caption = {m.config.vlm.sampling, m.config.caption_max_words};
    options.relation = {m.config.vlm.sampling, m.config.relation_max_words,
                        m.config.stroke_width};
    SceneGraphBuild build = GenerateSceneGraph(sample.image_id, sample.query_id,
                                               selection.objects, image, m.vlm->top(),
                                               *m.prompts, options);
    for (auto& w : build.warnings) out.warnings.push_back(std::move(w));
    out.result.node_count = build.graph.size();
    out.result.edge_count = static_cast<int>(build.graph.edges().size());
    out.graph = std::move(build.graph);
    if (stop_before_inference) return out;

    const Prediction p = InferTarget({sample.query_id, sample.query}, *out.graph, m.llm->top(),
                                     *m.prompts, {m.config.form, m.config.llm.sampling});
    out.result.target_index = p.index;
    out.result.box = p.box;
    out.result.explanation = p.explanation;
    out.result.fallback = p.fallback;
    out.result.retried = p.retried;
    if (p.fallback) out.warnings.push_back("target answer needed recovery");
  } catch (const std::exception& e) {
    out.result.error = e.what();
  }
  return out;
}

std::vector<SampleOutcome> Pipeline::RunAll(const StageParams& params) {
  const auto& samples = impl_->samples;
  std::vector<SampleOutcome> outcomes(samples.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::min<std::size_t>(std::max(1, impl_->config.concurrency), samples.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < samples.size(); i = next++) {
          outcomes[i] = RunSample(samples[i], params);
        }
      });
    }
  }
  return outcomes;
}

int Pipeline::backend_calls() const {
  return impl_->vlm->counting.calls() + impl_->llm->counting.calls();
}

int Pipeline::cache_hits() const { return impl_->vlm->hits() + impl_->llm->hits(); }

nlohmann::ordered_json BuildRunReport(const Pipeline& pipeline, const StageParams& params,
                                      const std::vector<SampleOutcome>& outcomes) {
  const auto& samples = pipeline.samples();
  std::vector<SampleResult> results;
  CandidateMap selected;
  nlohmann::ordered_json failed = nlohmann::ordered_json::array();
  int selection_fallbacks = 0;
  for (const auto& o : outcomes) {
    results.push_back(o.result);
    if (!o.selected_boxes.empty()) selected[o.result.query_id] = o.selected_boxes;
    if (o.result.selection_fallback) ++selection_fallbacks;
    if (o.result.failed()) {
      failed.push_back({{"query_id", o.result.query_id}, {"error", *o.result.error}});
    }
  }
  nlohmann::ordered_json config = pipeline.config().Echo();
  config["tau"] = params.tau;
  config["theta"] = params.theta;

  nlohmann::ordered_json j;
  j["config"] = std::move(config);
  j["split"] = ToJson(Top1Accuracy(results, samples, pipeline.config().split));
  const auto freq = NounFrequencies(samples, pipeline.tagger());
  auto& fb = j["frequency_buckets"] = nlohmann::ordered_json::array();
  for (const auto& b : FrequencyBuckets(results, samples, freq, pipeline.tagger())) {
    fb.push_back(ToJson(b));
  }
  auto& db = j["density_buckets"] = nlohmann::ordered_json::array();
  for (const auto& b : DensityBuckets(results, samples)) db.push_back(ToJson(b));
  j["coverage"] = {
      {"raw", ToJson(DetectionCoverage(RawCandidates(pipeline.detections(), samples), samples))},
      {"after_filter", ToJson(DetectionCoverage(selected, samples))}};
  j["selection_fallbacks"] = selection_fallbacks;
  j["failed"] = std::move(failed);
  return j;
}

std::string FormatRunReport(const nlohmann::ordered_json& report) {
  std::ostringstream out;
  const auto& s = report.at("split");
  out << "split " << s.at("split").get<std::string>() << ": " << s.at("correct").get<int>() << "/"
      << s.at("count").get<int>() << " correct, accuracy "
      << Fixed(s.at("accuracy").get<double>(), 2) << "%, mean IoU "
      << Fixed(s.at("mean_iou").get<double>(), 4) << "\n";
  out << "prediction fallbacks " << s.at("fallback_count").get<int>() << ", selection fallbacks "
      << report.at("selection_fallbacks").get<int>() << ", failed "
      << s.at("failed_count").get<int>() << "\n";
  const auto& cov = report.at("coverage");
  out << "coverage raw " << Fixed(cov.at("raw").at("percentage").get<double>(), 2)
      << "%, after filter " << Fixed(cov.at("after_filter").at("percentage").get<double>(), 2)
      << "%\n";
  for (const char* key : {"frequency_buckets", "density_buckets"}) {
    out << key << "\n";
    for (const auto& b : report.at(key)) {
      const auto& r = b.at("report");
      out << "  " << b.at("bucket").get<std::string>() << ": " << r.at("correct").get<int>()
          << "/" << r.at("count").get<int>() << " (" << Fixed(r.at("accuracy").get<double>(), 2)
          << "%)";
      if (!b.at("flagged").empty()) out << ", " << b.at("flagged").size() << " flagged";
      out << "\n";
    }
  }
  return out.str();
}

SweepParameter ParseSweepParameter(std::string_view name) {
  if (name == "tau") return SweepParameter::kTau;
  if (name == "theta") return SweepParameter::kTheta;
  throw Error(ErrorCode::kConfig, "unknown sweep parameter \"" + std::string(name) + "\"");
}

std::vector<SweepRow> Sweep(Pipeline& pipeline, SweepParameter parameter,
                            const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one value");
  std::vector<SweepRow> rows;
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "sweep values must lie in [0, 1]");
    }
  }
  for (double v : values) {
    StageParams params = pipeline.default_params();
    (parameter == SweepParameter::kTau ? params.tau : params.theta) = v;
    const auto outcomes = pipeline.RunAll(params);
    SweepRow row;
    row.value = v;
    std::vector<SampleResult> results;
    for (const auto& o : outcomes) {
      results.push_back(o.result);
      row.selected.push_back(static_cast<int>(o.selected_boxes.size()));
      row.pairs.push_back(o.candidate_pairs);
    }
    row.report = Top1Accuracy(results, pipeline.samples(), pipeline.config().split);
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json SweepToJson(const Pipeline& pipeline, SweepParameter parameter,
                                   const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json j;
  j["parameter"] = parameter == SweepParameter::kTau ? "tau" : "theta";
  j["config"] = pipeline.config().Echo();
  auto& ids = j["query_ids"] = nlohmann::ordered_json::array();
  for (const auto& s : pipeline.samples()) ids.push_back(s.query_id);
  auto& out = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["value"] = r.value;
    row["report"] = ToJson(r.report);
    row["selected"] = r.selected;
    row["pairs"] = r.pairs;
    out.push_back(std::move(row));
  }
  return j;
}

}  // namespace groundgraph
