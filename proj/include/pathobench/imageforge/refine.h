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

#ifndef PATHOBENCH_IMAGEFORGE_REFINE_H_
#define PATHOBENCH_IMAGEFORGE_REFINE_H_

#include "pathobench/core/config.h"
#include "pathobench/core/image.h"
#include "pathobench/imageforge/wavelet.h"
#include "pathobench/oracle/client.h"

namespace pathobench::imageforge {

struct Gains {
  double tophat = 0.0;
  double blackhat = 0.0;
  double gradient = 0.0;

  bool operator==(const Gains&) const = default;
};

struct WaveletMorphConfig {
  Wavelet wavelet = Wavelet::kHaar;
  int levels = 2;
  int radius = 1;
  Gains gains = {0.5, 0.5, 0.25};
  double tau = 0.9;  // 0 disables the gate
  int max_retries = 4;
  double gain_decay = 0.5;

  void Validate() const;
  // Reads `refine.*` keys; unknown keys are a kSchemaError.
  static WaveletMorphConfig FromConfig(const KeyValueConfig& cfg);
};

// Adds g_t*tophat + g_b*blackhat + g_g*gradient to every detail subband of
// every channel, reconstructs and clamps to [0,1].
ImageTensor EnhanceImage(const ImageTensor& image, int levels, int radius,
                         const Gains& gains);

struct RefineResult {
  ImageTensor image;
  Gains applied;       // (0,0,0) when every attempt failed the gate
  double similarity = 1.0;  // oracle image cosine of the returned image
  int attempts = 0;
  bool accepted = false;
};

// Enhance, then gate on cosine(embed_image(original), embed_image(enhanced))
// >= tau. On failure the gains shrink by gain_decay and the enhancement is
// retried, up to max_retries times.
RefineResult RefinePositiveImage(const ImageTensor& image,
                                 const WaveletMorphConfig& cfg,
                                 oracle::OracleClient& client);

}  // namespace pathobench::imageforge

#endif  // PATHOBENCH_IMAGEFORGE_REFINE_H_
