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

#include "pathobench/imageforge/wavelet.h"

#include <cmath>

#include "pathobench/core/error.h"

namespace pathobench::imageforge {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Half-sample symmetric reflection of index i into [0, n).
int Reflect(int i, int n) {
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

struct Split {
  Plane low, high;
};

// Pairs adjacent columns.
Split SplitColumns(const Plane& x) {
  const Eigen::Index w = x.cols() / 2;
  Split s{Plane(x.rows(), w), Plane(x.rows(), w)};
  for (Eigen::Index c = 0; c < w; ++c) {
    s.low.col(c) = (x.col(2 * c) + x.col(2 * c + 1)) * kInvSqrt2;
    s.high.col(c) = (x.col(2 * c) - x.col(2 * c + 1)) * kInvSqrt2;
  }
  return s;
}

Split SplitRows(const Plane& x) {
  const Eigen::Index h = x.rows() / 2;
  Split s{Plane(h, x.cols()), Plane(h, x.cols())};
  for (Eigen::Index r = 0; r < h; ++r) {
    s.low.row(r) = (x.row(2 * r) + x.row(2 * r + 1)) * kInvSqrt2;
    s.high.row(r) = (x.row(2 * r) - x.row(2 * r + 1)) * kInvSqrt2;
  }
  return s;
}

Plane MergeColumns(const Plane& low, const Plane& high) {
  Plane x(low.rows(), 2 * low.cols());
  for (Eigen::Index c = 0; c < low.cols(); ++c) {
    x.col(2 * c) = (low.col(c) + high.col(c)) * kInvSqrt2;
    x.col(2 * c + 1) = (low.col(c) - high.col(c)) * kInvSqrt2;
  }
  return x;
}

Plane MergeRows(const Plane& low, const Plane& high) {
  Plane x(2 * low.rows(), low.cols());
  for (Eigen::Index r = 0; r < low.rows(); ++r) {
    x.row(2 * r) = (low.row(r) + high.row(r)) * kInvSqrt2;
    x.row(2 * r + 1) = (low.row(r) - high.row(r)) * kInvSqrt2;
  }
  return x;
}

}  // namespace

Subbands Dwt2(const Plane& x, int levels) {
  if (levels < 1) throw Error(ErrorCode::kInvalidArgument, "wavelet levels must be >= 1");
  if (x.rows() < 1 || x.cols() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "empty plane");
  }
  Subbands out;
  out.height = static_cast<int>(x.rows());
  out.width = static_cast<int>(x.cols());
  const int block = 1 << levels;
  const int ph = (out.height + block - 1) / block * block;
  const int pw = (out.width + block - 1) / block * block;
  out.pad_bottom = ph - out.height;
  out.pad_right = pw - out.width;

  Plane cur(ph, pw);
  for (int r = 0; r < ph; ++r) {
    for (int c = 0; c < pw; ++c) {
      cur(r, c) = x(Reflect(r, out.height), Reflect(c, out.width));
    }
  }
  for (int level = 0; level < levels; ++level) {
    const Split cols = SplitColumns(cur);
    const Split lo = SplitRows(cols.low);
    const Split hi = SplitRows(cols.high);
    out.details.push_back({lo.high, hi.low, hi.high});
    cur = lo.low;
  }
  out.approx = std::move(cur);
  return out;
}

Plane Idwt2(const Subbands& bands) {
  Plane cur = bands.approx;
  for (auto it = bands.details.rbegin(); it != bands.details.rend(); ++it) {
    if (it->horizontal.rows() != cur.rows() || it->horizontal.cols() != cur.cols() ||
        it->vertical.rows() != cur.rows() || it->diagonal.rows() != cur.rows()) {
      throw Error(ErrorCode::kDimensionMismatch, "subband shapes are inconsistent");
    }
    const Plane low = MergeRows(cur, it->horizontal);
    const Plane high = MergeRows(it->vertical, it->diagonal);
    cur = MergeColumns(low, high);
  }
  return cur.topLeftCorner(bands.height, bands.width);
}

Plane ChannelPlane(const ImageTensor& image, int channel) {
  Plane p(image.height(), image.width());
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) p(y, x) = image.at(y, x, channel);
  return p;
}

void SetChannelPlane(ImageTensor& image, int channel, const Plane& plane) {
  if (plane.rows() != image.height() || plane.cols() != image.width()) {
    throw Error(ErrorCode::kDimensionMismatch, "plane does not match image");
  }
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) image.at(y, x, channel) = plane(y, x);
}

}  // namespace pathobench::imageforge
