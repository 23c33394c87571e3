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

#ifndef GROUNDGRAPH_GEOMETRY_H_
#define GROUNDGRAPH_GEOMETRY_H_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace groundgraph {

// Axis-aligned box in absolute pixel coordinates, corner form, origin at the
// top-left. Coordinates stay as doubles until serialization.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  bool valid() const;

  friend bool operator==(const BBox&, const BBox&) = default;
};

struct ImageDims {
  int width = 0;
  int height = 0;

  bool valid() const { return width > 0 && height > 0; }
  friend bool operator==(const ImageDims&, const ImageDims&) = default;
};

// How four box numbers are laid out on disk.
enum class BoxForm { kXyxy, kXywh };

// Throws Error(kSchema) for anything other than "xyxy" / "xywh".
BoxForm ParseBoxForm(std::string_view form);

// Converts to corner form and checks validity; throws Error(kSchema) on
// non-finite values, negative extents, or x2 < x1 / y2 < y1.
BBox MakeBox(BoxForm form, std::span<const double, 4> values);

double Area(const BBox& b);
double IntersectionArea(const BBox& a, const BBox& b);

// Intersection over union; 0 when the union is empty.
double IntersectionOverUnion(const BBox& a, const BBox& b);

struct OverlapRatio {
  double value = 0.0;
  // Set when the smaller box has zero area; value is then 0.
  bool degenerate = false;
};

// Intersection area relative to the smaller of the two boxes.
OverlapRatio OverlapRatioOfSmaller(const BBox& a, const BBox& b);

// Clips into [0,width]x[0,height]. Throws Error(kInvalidArgument) when the box
// shares no point with the image.
BBox ClampToImage(const BBox& b, ImageDims dims);

// Rounds each coordinate half away from zero.
std::array<std::int64_t, 4> RoundedCorners(const BBox& b);

}  // namespace groundgraph

#endif  // GROUNDGRAPH_GEOMETRY_H_
