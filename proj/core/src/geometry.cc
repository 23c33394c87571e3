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

#include "groundgraph/geometry.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "groundgraph/error.h"

namespace groundgraph {

bool BBox::valid() const {
  return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) &&
         std::isfinite(y2) && x1 <= x2 && y1 <= y2;
}

BoxForm ParseBoxForm(std::string_view form) {
  if (form == "xyxy") return BoxForm::kXyxy;
  if (form == "xywh") return BoxForm::kXywh;
  throw Error(ErrorCode::kSchema,
              "unknown box form '" + std::string(form) + "'");
}

BBox MakeBox(BoxForm form, std::span<const double, 4> v) {
  BBox box;
  if (form == BoxForm::kXyxy) {
    box = {v[0], v[1], v[2], v[3]};
  } else {
    if (v[2] < 0 || v[3] < 0) {
      throw Error(ErrorCode::kSchema, "negative width or height");
    }
    box = {v[0], v[1], v[0] + v[2], v[1] + v[3]};
  }
  if (!box.valid()) {
    throw Error(ErrorCode::kSchema, "box must satisfy x1<=x2 and y1<=y2");
  }
  return box;
}

double Area(const BBox& b) { return b.width() * b.height(); }

double IntersectionArea(const BBox& a, const BBox& b) {
  const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (w <= 0 || h <= 0) return 0.0;
  return w * h;
}

double IntersectionOverUnion(const BBox& a, const BBox& b) {
  const double inter = IntersectionArea(a, b);
  const double uni = Area(a) + Area(b) - inter;
  if (uni <= 0) return 0.0;
  return inter / uni;
}

OverlapRatio OverlapRatioOfSmaller(const BBox& a, const BBox& b) {
  const double smaller = std::min(Area(a), Area(b));
  if (smaller <= 0) return {0.0, true};
  return {IntersectionArea(a, b) / smaller, false};
}

BBox ClampToImage(const BBox& b, ImageDims dims) {
  if (!dims.valid()) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be positive");
  }
  const double w = dims.width;
  const double h = dims.height;
  if (b.x1 > w || b.y1 > h || b.x2 < 0 || b.y2 < 0) {
    throw Error(ErrorCode::kInvalidArgument, "box lies entirely outside the image");
  }
  return {std::clamp(b.x1, 0.0, w), std::clamp(b.y1, 0.0, h),
          std::clamp(b.x2, 0.0, w), std::clamp(b.y2, 0.0, h)};
}

std::array<std::int64_t, 4> RoundedCorners(const BBox& b) {
  return {std::llround(b.x1), std::llround(b.y1), std::llround(b.x2),
          std::llround(b.y2)};
}

}  // namespace groundgraph
