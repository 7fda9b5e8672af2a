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

#ifndef PATHOBENCH_ORACLE_SALIENCY_H_
#define PATHOBENCH_ORACLE_SALIENCY_H_

#include "pathobench/core/types.h"
#include "pathobench/oracle/client.h"
#include "pathobench/oracle/image_store.h"

namespace pathobench::oracle {

// Cosine in [-1, 1] mapped affinely onto [0, 1].
inline double SaliencyFromCosine(double cosine) { return 0.5 * (cosine + 1.0); }
inline double CosineFromSaliency(double saliency) { return 2.0 * saliency - 1.0; }

// Fills every span's saliency with the affine map of
// cosine(embed_text(span text), embed_image(image)).
// Throws kNoPhrases when the pair has no spans.
PairRecord PhraseImageSaliency(const PairRecord& pair, OracleClient& client,
                               const ImageStore& images);

}  // namespace pathobench::oracle

#endif  // PATHOBENCH_ORACLE_SALIENCY_H_
