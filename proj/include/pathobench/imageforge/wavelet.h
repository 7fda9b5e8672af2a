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

#ifndef PATHOBENCH_IMAGEFORGE_WAVELET_H_
#define PATHOBENCH_IMAGEFORGE_WAVELET_H_

#include <vector>

#include <Eigen/Dense>

#include "pathobench/core/image.h"

namespace pathobench::imageforge {

// One image channel, rows = image rows.
using Plane = Eigen::MatrixXd;

enum class Wavelet { kHaar };

struct DetailBands {
  Plane horizontal;  // low-pass columns, high-pass rows
  Plane vertical;    // high-pass columns, low-pass rows
  Plane diagonal;
};

struct Subbands {
  Wavelet wavelet = Wavelet::kHaar;
  int height = 0;  // before padding
  int width = 0;
  int pad_bottom = 0;  // rows added by symmetric reflection
  int pad_right = 0;
  Plane approx;                     // coarsest low-pass band
  std::vector<DetailBands> details;  // finest level first
};

// Orthonormal multi-level Haar analysis. Sizes not divisible by 2^levels are
// padded by half-sample symmetric reflection; the padding is recorded and
// removed by Idwt2.
Subbands Dwt2(const Plane& x, int levels);
Plane Idwt2(const Subbands& bands);

Plane ChannelPlane(const ImageTensor& image, int channel);
void SetChannelPlane(ImageTensor& image, int channel, const Plane& plane);

}  // namespace pathobench::imageforge

#endif  // PATHOBENCH_IMAGEFORGE_WAVELET_H_
