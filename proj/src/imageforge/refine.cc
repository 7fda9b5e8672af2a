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

#include "pathobench/imageforge/refine.h"

#include "pathobench/core/error.h"
#include "pathobench/imageforge/morphology.h"

namespace pathobench::imageforge {

void WaveletMorphConfig::Validate() const {
  if (levels < 1) throw Error(ErrorCode::kInvalidArgument, "refine.levels must be >= 1");
  if (radius < 1) throw Error(ErrorCode::kInvalidArgument, "refine.radius must be >= 1");
  if (gains.tophat < 0 || gains.blackhat < 0 || gains.gradient < 0) {
    throw Error(ErrorCode::kInvalidArgument, "refine gains must be >= 0");
  }
  if (!(tau >= 0 && tau < 1)) {
    throw Error(ErrorCode::kInvalidArgument, "refine.tau must lie in [0, 1)");
  }
  if (max_retries < 0) throw Error(ErrorCode::kInvalidArgument, "refine.max_retries must be >= 0");
  if (!(gain_decay > 0 && gain_decay < 1)) {
    throw Error(ErrorCode::kInvalidArgument, "refine.gain_decay must lie in (0, 1)");
  }
}

WaveletMorphConfig WaveletMorphConfig::FromConfig(const KeyValueConfig& cfg) {
  const auto unknown = cfg.UnknownKeys(
      "refine", {"wavelet", "levels", "radius", "gain_tophat", "gain_blackhat",
                 "gain_gradient", "tau", "max_retries", "gain_decay"});
  if (!unknown.empty()) {
    throw Error(ErrorCode::kSchemaError, "unknown config key " + *unknown.begin());
  }
  WaveletMorphConfig c;
  if (cfg.GetString("refine.wavelet", "haar") != "haar") {
    throw Error(ErrorCode::kSchemaError, "refine.wavelet: only haar is supported");
  }
  c.levels = static_cast<int>(cfg.GetInt("refine.levels", c.levels));
  c.radius = static_cast<int>(cfg.GetInt("refine.radius", c.radius));
  c.gains.tophat = cfg.GetDouble("refine.gain_tophat", c.gains.tophat);
  c.gains.blackhat = cfg.GetDouble("refine.gain_blackhat", c.gains.blackhat);
  c.gains.gradient = cfg.GetDouble("refine.gain_gradient", c.gains.gradient);
  c.tau = cfg.GetDouble("refine.tau", c.tau);
  c.max_retries = static_cast<int>(cfg.GetInt("refine.max_retries", c.max_retries));
  c.gain_decay = cfg.GetDouble("refine.gain_decay", c.gain_decay);
  c.Validate();
  return c;
}

ImageTensor EnhanceImage(const ImageTensor& image, int levels, int radius,
                         const Gains& gains) {
  ImageTensor out = image;
  for (int ch = 0; ch < image.channels(); ++ch) {
    Subbands bands = Dwt2(ChannelPlane(image, ch), levels);
    for (DetailBands& level : bands.details) {
      for (Plane* band : {&level.horizontal, &level.vertical, &level.diagonal}) {
        const Plane boost = gains.tophat * MorphTopHat(*band, radius) +
                            gains.blackhat * MorphBlackHat(*band, radius) +
                            gains.gradient * MorphGradient(*band, radius);
        *band += boost;
      }
    }
    SetChannelPlane(out, ch, Idwt2(bands));
  }
  out.Clamp();
  return out;
}

RefineResult RefinePositiveImage(const ImageTensor& image,
                                 const WaveletMorphConfig& cfg,
                                 oracle::OracleClient& client) {
  cfg.Validate();
  if (image.empty() || !image.AllFinite()) {
    throw Error(ErrorCode::kDecodeError, "image is empty or not finite");
  }
  const oracle::Embedding original = client.EmbedImages({image}).front();
  RefineResult result;
  Gains gains = cfg.gains;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    ImageTensor enhanced = EnhanceImage(image, cfg.levels, cfg.radius, gains);
    const double sim =
        oracle::Cosine(original.values, client.EmbedImages({enhanced}).front().values);
    result.attempts = attempt + 1;
    if (cfg.tau <= 0 || sim >= cfg.tau) {
      result.image = std::move(enhanced);
      result.applied = gains;
      result.similarity = sim;
      result.accepted = true;
      return result;
    }
    gains.tophat *= cfg.gain_decay;
    gains.blackhat *= cfg.gain_decay;
    gains.gradient *= cfg.gain_decay;
  }
  result.image = image;
  result.applied = Gains{};
  result.similarity = 1.0;
  return result;
}

}  // namespace pathobench::imageforge
