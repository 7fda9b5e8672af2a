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

#ifndef PATHOBENCH_ORACLE_IMAGE_STORE_H_
#define PATHOBENCH_ORACLE_IMAGE_STORE_H_

#include <map>
#include <mutex>
#include <string>

#include "pathobench/core/image.h"

namespace pathobench::oracle {

// Resolves image refs. A ref is either a registered in-memory id
// ("mem:<fnv64 of PNG bytes>") or a PNG path, relative refs resolving
// against the store's base directory. Loaded files are cached.
class ImageStore {
 public:
  explicit ImageStore(std::string base_dir = ".") : base_dir_(std::move(base_dir)) {}

  // Registers an image under its content-addressed id and returns the id.
  std::string Put(const ImageTensor& image);
  void PutAs(const std::string& ref, const ImageTensor& image);

  // Throws kIoError / kDecodeError when the ref cannot be resolved.
  ImageTensor Get(const std::string& ref) const;
  std::string ResolvePath(const std::string& ref) const;

 private:
  std::string base_dir_;
  mutable std::mutex mu_;
  mutable std::map<std::string, ImageTensor> images_;
};

}  // namespace pathobench::oracle

#endif  // PATHOBENCH_ORACLE_IMAGE_STORE_H_
