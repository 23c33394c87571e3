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

#ifndef GROUNDGRAPH_IMAGE_H_
#define GROUNDGRAPH_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "groundgraph/geometry.h"

namespace groundgraph {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kRed{255, 0, 0};
inline constexpr Rgb kBlue{0, 0, 255};

// Immutable 8-bit RGB raster. Copies share pixels; every operation that
// changes pixels returns a new image.
class Image {
 public:
  // Throws Error(kImage) if the file is missing or cannot be decoded.
  static Image Load(const std::filesystem::path& path);
  static Image Decode(const std::string& encoded);
  static Image Solid(int width, int height, Rgb color);

  ImageDims dims() const;
  Rgb PixelAt(int x, int y) const;

  // Pixels covered by the box after clamping; nullopt when the clamped region
  // has no whole pixel.
  std::optional<Image> Crop(const BBox& box) const;

  // Outline of `box` drawn with the given stroke (pixels, drawn inward).
  Image WithRectangle(const BBox& box, Rgb color, int stroke) const;

  // Lossless PNG bytes; deterministic for identical pixels.
  std::string EncodePng() const;
  void Save(const std::filesystem::path& path) const;

 private:
  struct Impl;
  explicit Image(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

}  // namespace groundgraph

#endif  // GROUNDGRAPH_IMAGE_H_
