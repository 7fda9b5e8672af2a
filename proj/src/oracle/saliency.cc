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

#include "pathobench/oracle/saliency.h"

#include "pathobench/core/error.h"

namespace pathobench::oracle {

PairRecord PhraseImageSaliency(const PairRecord& pair, OracleClient& client,
                               const ImageStore& images) {
  if (pair.phrases.empty()) {
    throw Error(ErrorCode::kNoPhrases, "pair " + pair.id + " has no phrase spans");
  }
  std::vector<std::string> texts;
  texts.reserve(pair.phrases.size());
  for (const PhraseSpan& span : pair.phrases) {
    texts.emplace_back(pair.PhraseText(span));
  }
  const std::vector<Embedding> phrase_embeddings = client.EmbedText(texts);
  const Embedding image_embedding =
      client.EmbedImages({images.Get(pair.image_ref)}).front();
  PairRecord out = pair;
  for (size_t i = 0; i < out.phrases.size(); ++i) {
    const double cosine =
        Cosine(phrase_embeddings[i].values, image_embedding.values);
    out.phrases[i].saliency = std::clamp(SaliencyFromCosine(cosine), 0.0, 1.0);
  }
  return out;
}

}  // namespace pathobench::oracle
