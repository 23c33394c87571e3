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

#include "groundgraph/object_grounding.h"

#include <sstream>

#include <gtest/gtest.h>

#include "groundgraph/error.h"
#include "testing/fixtures.h"
#include "testing/oracles.h"
#include "testing/properties.h"

namespace groundgraph {
namespace {

DetectionIndex Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseDetections(in, "dets.jsonl");
}

std::string Record(const std::string& image, const std::string& id, const std::string& label,
                   const std::string& box = R"({"form":"xyxy","values":[0,0,10,10]})") {
  return R"({"image_id":")" + image + R"(","det_id":")" + id + R"(","label":")" + label +
         R"(","box":)" + box + R"(,"attributes":["red"]})" + "\n";
}

TEST(LoadDetections, TwoImagesThreeBoxes) {
  std::string text;
  for (const std::string img : {"a", "b"}) {
    for (const std::string id : {"1", "2", "3"}) text += Record(img, id, "man");
  }
  const DetectionIndex idx = Parse(text);
  ASSERT_EQ(idx.size(), 2u);
  EXPECT_EQ(idx.at("a").detections.size(), 3u);
  EXPECT_EQ(idx.at("b").detections.size(), 3u);
  EXPECT_EQ(idx.at("a").detections[1].id, "2");
  EXPECT_EQ(idx.at("a").detections[0].attributes, (std::vector<std::string>{"red"}));
}

TEST(LoadDetections, EmptyFileIsEmptyMap) {
  EXPECT_TRUE(Parse("").empty());
  EXPECT_TRUE(Parse("\n\n").empty());
}

TEST(LoadDetections, MissingLabelNamesTheRecord) {
  const std::string text = Record("a", "1", "man") +
                           R"({"image_id":"a","det_id":"2","box":{"values":[0,0,1,1]}})" + "\n";
  try {
    Parse(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchema);
    EXPECT_NE(std::string(e.what()).find("dets.jsonl:2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("label"), std::string::npos) << e.what();
  }
}

TEST(LoadDetections, DuplicateIdRejected) {
  EXPECT_THROW(Parse(Record("a", "1", "man") + Record("a", "1", "dog")), Error);
  EXPECT_NO_THROW(Parse(Record("a", "1", "man") + Record("b", "1", "dog")));
}

TEST(LoadDetections, WidthHeightFormIsConverted) {
  const auto idx = Parse(Record("a", "1", "man", R"({"form":"xywh","values":[5,6,10,20]})"));
  EXPECT_EQ(idx.at("a").detections[0].box, (BBox{5, 6, 15, 26}));
  EXPECT_THROW(Parse(Record("a", "1", "man", R"({"form":"xyxy","values":[5,6,1,20]})")), Error);
  EXPECT_THROW(Parse(Record("a", "1", "man", R"({"form":"polar","values":[5,6,1,20]})")), Error);
}

TEST(LoadDetections, UnknownImageYieldsEmptySet) {
  const DetectionSet s = DetectionsFor(Parse(Record("a", "1", "man")), "zzz");
  EXPECT_EQ(s.image_id, "zzz");
  EXPECT_TRUE(s.detections.empty());
}

DetectionSet Labels(const std::vector<std::string>& labels) {
  DetectionSet s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    s.detections.push_back({std::to_string(i + 1), labels[i], {0, 0, 1, 1}, {}, {}});
  }
  return s;
}

QueryNames Names(std::vector<std::string> nouns) {
  QueryNames n;
  n.nouns = std::move(nouns);
  return n;
}

std::vector<std::string> Ids(const Selection& s) {
  std::vector<std::string> out;
  for (const auto& d : s.objects) out.push_back(d.id);
  return out;
}

TEST(SelectObjects, FixtureCosinesPickTheMan) {
  const EmbeddingTable table = testing::FixtureTable();
  const DetectionSet dets = Labels({"man", "table", "kite"});
  const Selection s = SelectObjects(dets, Names({"person"}), {0.5, true}, table);
  EXPECT_EQ(Ids(s), (std::vector<std::string>{"1"}));
  EXPECT_FALSE(s.fallback);
  // Brute force over label x name agrees, and the fixture cosines are as built.
  EXPECT_EQ(testing::BruteForceSelect(dets.detections, {"person"}, 0.5, table),
            (std::vector<std::string>{"1"}));
  EXPECT_NEAR(static_cast<double>(*testing::OracleCosine(table, "man", "person")), 0.61, 1e-6);
  EXPECT_NEAR(static_cast<double>(*testing::OracleCosine(table, "table", "person")), 0.18, 1e-6);
  EXPECT_NEAR(static_cast<double>(*testing::OracleCosine(table, "kite", "person")), 0.12, 1e-6);
}

TEST(SelectObjects, IdenticalLabelAlwaysSelected) {
  const EmbeddingTable table = testing::FixtureTable();
  for (double tau : {0.01, 0.5, 0.99, 1.0}) {
    EXPECT_EQ(Ids(SelectObjects(Labels({"kite", "dog"}), Names({"dog"}), {tau, false}, table)),
              (std::vector<std::string>{"2"}))
        << tau;
  }
}

TEST(SelectObjects, EmptyNamesFallBackToAll) {
  const EmbeddingTable table = testing::FixtureTable();
  const Selection s = SelectObjects(Labels({"man", "kite"}), QueryNames{}, {0.5, true}, table);
  EXPECT_TRUE(s.fallback);
  EXPECT_EQ(Ids(s), (std::vector<std::string>{"1", "2"}));
  const Selection strict =
      SelectObjects(Labels({"man", "kite"}), QueryNames{}, {0.5, false}, table);
  EXPECT_FALSE(strict.fallback);
  EXPECT_TRUE(strict.objects.empty());
}

TEST(SelectObjects, OovNeverSelectsEvenAtZeroTau) {
  const EmbeddingTable table = testing::FixtureTable();
  EXPECT_EQ(Ids(SelectObjects(Labels({"xyzzy", "man"}), Names({"qwerty", "zero"}), {0.0, false},
                              table)),
            std::vector<std::string>{});
  EXPECT_EQ(Ids(SelectObjects(Labels({"xyzzy", "man"}), Names({"qwerty", "person"}),
                              {0.0, false}, table)),
            (std::vector<std::string>{"2"}));
}

TEST(SelectObjects, InvalidTauRejected) {
  EXPECT_THROW((SelectionConfig{1.5, true}).Validate(), Error);
  EXPECT_THROW((SelectionConfig{-0.1, true}).Validate(), Error);
}

TEST(SelectObjects, EquivalentToBruteForceWithTauMonotonicity) {
  const auto r = testing::CheckSelectionEquivalence(300, 1234);
  EXPECT_TRUE(r.ok) << r.detail;
}

}  // namespace
}  // namespace groundgraph
