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

#include "pathobench/oracle/image_store.h"

#include <filesystem>

#include "pathobench/core/hash.h"

namespace pathobench::oracle {

std::string ImageStore::Put(const ImageTensor& image) {
  const std::string ref = "mem:" + HexU64(Fnv1a64(EncodePng(image)));
  PutAs(ref, image);
  return ref;
}

void ImageStore::PutAs(const std::string& ref, const ImageTensor& image) {
  std::lock_guard<std::mutex> lock(mu_);
  images_[ref] = image;
}

std::string ImageStore::ResolvePath(const std::string& ref) const {
  std::filesystem::path p(ref);
  if (p.is_relative()) p = std::filesystem::path(base_dir_) / p;
  return p.string();
}

ImageTensor ImageStore::Get(const std::string& ref) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = images_.find(ref);
    if (it != images_.end()) return it->second;
  }
  ImageTensor image = ReadPng(ResolvePath(ref));
  std::lock_guard<std::mutex> lock(mu_);
  images_.emplace(ref, image);
  return image;
}

}  // namespace pathobench::oracle
