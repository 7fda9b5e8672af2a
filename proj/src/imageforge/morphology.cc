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

#include "pathobench/imageforge/morphology.h"

#include <algorithm>

#include "pathobench/core/error.h"

namespace pathobench::imageforge {

namespace {

// Running min/max over a (2r+1) window along rows, then along columns.
template <typename Pick>
Plane Filter(const Plane& x, int r, Pick pick) {
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "structuring radius must be >= 1");
  const Eigen::Index h = x.rows();
  const Eigen::Index w = x.cols();
  Plane tmp(h, w), out(h, w);
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < w; ++j) {
      double v = x(i, j);
      for (int k = -r; k <= r; ++k) {
        v = pick(v, x(i, std::clamp<Eigen::Index>(j + k, 0, w - 1)));
      }
      tmp(i, j) = v;
    }
  }
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < w; ++j) {
      double v = tmp(i, j);
      for (int k = -r; k <= r; ++k) {
        v = pick(v, tmp(std::clamp<Eigen::Index>(i + k, 0, h - 1), j));
      }
      out(i, j) = v;
    }
  }
  return out;
}

double Min(double a, double b) { return std::min(a, b); }
double Max(double a, double b) { return std::max(a, b); }

}  // namespace

Plane Erode(const Plane& x, int r) { return Filter(x, r, Min); }
Plane Dilate(const Plane& x, int r) { return Filter(x, r, Max); }
Plane Open(const Plane& x, int r) { return Dilate(Erode(x, r), r); }
Plane Close(const Plane& x, int r) { return Erode(Dilate(x, r), r); }

Plane MorphTopHat(const Plane& x, int r) { return x - Open(x, r); }
Plane MorphBlackHat(const Plane& x, int r) { return Close(x, r) - x; }
Plane MorphGradient(const Plane& x, int r) { return Dilate(x, r) - Erode(x, r); }

}  // namespace pathobench::imageforge
