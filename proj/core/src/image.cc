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

#include "groundgraph/image.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "groundgraph/error.h"

namespace groundgraph {

struct Image::Impl {
  cv::Mat bgr;  // CV_8UC3
};

namespace {

cv::Mat ToBgr(const cv::Mat& m) {
  cv::Mat out;
  switch (m.channels()) {
    case 1: cv::cvtColor(m, out, cv::COLOR_GRAY2BGR); break;
    case 4: cv::cvtColor(m, out, cv::COLOR_BGRA2BGR); break;
    default: out = m;
  }
  if (out.depth() != CV_8U) out.convertTo(out, CV_8U);
  return out;
}

}  // namespace

Image Image::Load(const std::filesystem::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (m.empty()) {
    throw Error(ErrorCode::kImage, "cannot read image " + path.string());
  }
  return Image(std::make_shared<Impl>(Impl{ToBgr(m)}));
}

Image Image::Decode(const std::string& encoded) {
  std::vector<uchar> buf(encoded.begin(), encoded.end());
  cv::Mat m = buf.empty() ? cv::Mat() : cv::imdecode(buf, cv::IMREAD_COLOR);
  if (m.empty()) throw Error(ErrorCode::kImage, "cannot decode image bytes");
  return Image(std::make_shared<Impl>(Impl{ToBgr(m)}));
}

Image Image::Solid(int width, int height, Rgb c) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be positive");
  }
  cv::Mat m(height, width, CV_8UC3, cv::Scalar(c.b, c.g, c.r));
  return Image(std::make_shared<Impl>(Impl{m}));
}

ImageDims Image::dims() const { return {impl_->bgr.cols, impl_->bgr.rows}; }

Rgb Image::PixelAt(int x, int y) const {
  if (x < 0 || y < 0 || x >= impl_->bgr.cols || y >= impl_->bgr.rows) {
    throw Error(ErrorCode::kInvalidArgument, "pixel outside image");
  }
  const auto& px = impl_->bgr.at<cv::Vec3b>(y, x);
  return {px[2], px[1], px[0]};
}

std::optional<Image> Image::Crop(const BBox& box) const {
  BBox clamped;
  try {
    clamped = ClampToImage(box, dims());
  } catch (const Error&) {
    return std::nullopt;
  }
  const int x1 = static_cast<int>(std::floor(clamped.x1));
  const int y1 = static_cast<int>(std::floor(clamped.y1));
  const int x2 = static_cast<int>(std::ceil(clamped.x2));
  const int y2 = static_cast<int>(std::ceil(clamped.y2));
  if (Area(clamped) <= 0 || x2 <= x1 || y2 <= y1) return std::nullopt;
  cv::Mat roi = impl_->bgr(cv::Rect(x1, y1, x2 - x1, y2 - y1)).clone();
  return Image(std::make_shared<Impl>(Impl{roi}));
}

Image Image::WithRectangle(const BBox& box, Rgb color, int stroke) const {
  if (stroke <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "stroke width must be positive");
  }
  cv::Mat out = impl_->bgr.clone();
  const auto [w, h] = dims();
  const int x1 = std::clamp(static_cast<int>(std::lround(box.x1)), 0, w - 1);
  const int y1 = std::clamp(static_cast<int>(std::lround(box.y1)), 0, h - 1);
  const int x2 = std::clamp(static_cast<int>(std::lround(box.x2)) - 1, 0, w - 1);
  const int y2 = std::clamp(static_cast<int>(std::lround(box.y2)) - 1, 0, h - 1);
  const cv::Scalar bgr(color.b, color.g, color.r);
  // Filled bands rather than cv::rectangle so the stroke stays inside the box.
  for (int s = 0; s < stroke; ++s) {
    const int l = std::min(x1 + s, x2), r = std::max(x2 - s, x1);
    const int t = std::min(y1 + s, y2), b = std::max(y2 - s, y1);
    cv::line(out, {l, t}, {r, t}, bgr, 1, cv::LINE_8);
    cv::line(out, {l, b}, {r, b}, bgr, 1, cv::LINE_8);
    cv::line(out, {l, t}, {l, b}, bgr, 1, cv::LINE_8);
    cv::line(out, {r, t}, {r, b}, bgr, 1, cv::LINE_8);
  }
  return Image(std::make_shared<Impl>(Impl{out}));
}

std::string Image::EncodePng() const {
  std::vector<uchar> buf;
  if (!cv::imencode(".png", impl_->bgr, buf)) {
    throw Error(ErrorCode::kImage, "PNG encoding failed");
  }
  return {buf.begin(), buf.end()};
}

void Image::Save(const std::filesystem::path& path) const {
  if (!cv::imwrite(path.string(), impl_->bgr)) {
    throw Error(ErrorCode::kImage, "cannot write image " + path.string());
  }
}

}  // namespace groundgraph
