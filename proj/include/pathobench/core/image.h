/* Copyright 2026 The Pathobench Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef PATHOBENCH_CORE_IMAGE_H_
#define PATHOBENCH_CORE_IMAGE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pathobench {

// Row-major, channel-interleaved image with values in [0, 1].
class ImageTensor {
 public:
  ImageTensor() = default;
  ImageTensor(int height, int width, int channels, double fill = 0.0);

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& at(int y, int x, int c) {
    return values_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
  }
  double at(int y, int x, int c) const {
    return values_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
  }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  // Single channel as a dense row-major plane.
  std::vector<double> Channel(int c) const;
  void SetChannel(int c, const std::vector<double>& plane);

  void Clamp();
  bool AllFinite() const;
  bool SameShape(const ImageTensor& other) const;

  bool operator==(const ImageTensor&) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<double> values_;
};

double MaxAbsDifference(const ImageTensor& a, const ImageTensor& b);

// 8-bit grayscale or RGB PNG. Decoding other PNG flavours is rejected with
// kDecodeError; encoding quantizes to 8 bits with round-to-nearest.
std::string EncodePng(const ImageTensor& image);
ImageTensor DecodePng(std::string_view bytes);
ImageTensor ReadPng(const std::string& path);
void WritePng(const ImageTensor& image, const std::string& path);

std::string Base64Encode(std::string_view bytes);
std::string Base64Decode(std::string_view text);

}  // namespace pathobench

#endif  // PATHOBENCH_CORE_IMAGE_H_
