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

#ifndef PATHOBENCH_IMAGEFORGE_MORPHOLOGY_H_
#define PATHOBENCH_IMAGEFORGE_MORPHOLOGY_H_

#include "pathobench/imageforge/wavelet.h"

namespace pathobench::imageforge {

// Flat square structuring element of side 2r+1, edge-replicated borders.
// All throw kInvalidArgument for r < 1.
Plane Erode(const Plane& x, int r);
Plane Dilate(const Plane& x, int r);
Plane Open(const Plane& x, int r);
Plane Close(const Plane& x, int r);

Plane MorphTopHat(const Plane& x, int r);    // x - open(x)
Plane MorphBlackHat(const Plane& x, int r);  // close(x) - x
Plane MorphGradient(const Plane& x, int r);  // dilate(x) - erode(x)

}  // namespace pathobench::imageforge

#endif  // PATHOBENCH_IMAGEFORGE_MORPHOLOGY_H_
