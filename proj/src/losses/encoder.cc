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

#include "pathobench/losses/encoder.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "pathobench/core/error.h"

namespace pathobench::losses {

namespace {

// Overlap weights of unit pixels [y, y+1) with cells of size n/grid.
Matrix AreaWeights(int n, int grid) {
  Matrix w = Matrix::Zero(grid, n);
  const double cell = static_cast<double>(n) / grid;
  for (int r = 0; r < grid; ++r) {
    const double lo = r * cell;
    const double hi = (r + 1) * cell;
    for (int y = static_cast<int>(std::floor(lo)); y < n && y < hi; ++y) {
      const double overlap = std::min<double>(y + 1, hi) - std::max<double>(y, lo);
      if (overlap > 0) w(r, y) = overlap / cell;
    }
  }
  return w;
}

}  // namespace

ToyEncoderParams ToyEncoderParams::Random(size_t text_dim, size_t image_dim,
                                          size_t d, Rng& rng) {
  if (d < 2 || text_dim == 0 || image_dim == 0) {
    throw Error(ErrorCode::kInvalidArgument, "encoder dimensions too small");
  }
  ToyEncoderParams p;
  p.text_proj.resize(text_dim, d);
  p.img_proj.resize(image_dim, d);
  const double st = 1.0 / std::sqrt(static_cast<double>(text_dim));
  const double si = 1.0 / std::sqrt(static_cast<double>(image_dim));
  for (Eigen::Index r = 0; r < p.text_proj.rows(); ++r)
    for (Eigen::Index c = 0; c < p.text_proj.cols(); ++c)
      p.text_proj(r, c) = st * rng.Normal();
  for (Eigen::Index r = 0; r < p.img_proj.rows(); ++r)
    for (Eigen::Index c = 0; c < p.img_proj.cols(); ++c)
      p.img_proj(r, c) = si * rng.Normal();
  p.log_temperature = std::log(kDefaultTemperature);
  return p;
}

double ToyEncoderParams::temperature() const { return std::exp(log_temperature); }

Vector ToyEncoderParams::EncodeText(const Vector& x) const {
  if (x.size() != text_proj.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "text feature size mismatch");
  }
  return text_proj.transpose() * x;
}

Vector ToyEncoderParams::EncodeImage(const Vector& pooled) const {
  if (pooled.size() != img_proj.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "image feature size mismatch");
  }
  return img_proj.transpose() * pooled;
}

size_t ToyEncoderParams::NumParams() const {
  return static_cast<size_t>(text_proj.size() + img_proj.size()) + 1;
}

std::vector<double> ToyEncoderParams::Flatten() const {
  std::vector<double> out;
  out.reserve(NumParams());
  for (Eigen::Index r = 0; r < text_proj.rows(); ++r)
    for (Eigen::Index c = 0; c < text_proj.cols(); ++c) out.push_back(text_proj(r, c));
  for (Eigen::Index r = 0; r < img_proj.rows(); ++r)
    for (Eigen::Index c = 0; c < img_proj.cols(); ++c) out.push_back(img_proj(r, c));
  out.push_back(log_temperature);
  return out;
}

void ToyEncoderParams::Unflatten(const std::vector<double>& flat) {
  if (flat.size() != NumParams()) {
    throw Error(ErrorCode::kLengthMismatch, "parameter vector has wrong length");
  }
  size_t k = 0;
  for (Eigen::Index r = 0; r < text_proj.rows(); ++r)
    for (Eigen::Index c = 0; c < text_proj.cols(); ++c) text_proj(r, c) = flat[k++];
  for (Eigen::Index r = 0; r < img_proj.rows(); ++r)
    for (Eigen::Index c = 0; c < img_proj.cols(); ++c) img_proj(r, c) = flat[k++];
  log_temperature = flat[k];
}

void ToyEncoderParams::Save(const std::string& path) const {
  std::vector<double> values = {static_cast<double>(text_dim()),
                                static_cast<double>(image_dim()),
                                static_cast<double>(dim())};
  const std::vector<double> flat = Flatten();
  values.insert(values.end(), flat.begin(), flat.end());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  for (double v : values) {
    unsigned char bytes[8];
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(bytes), 8);
  }
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path);
}

ToyEncoderParams ToyEncoderParams::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::vector<double> values;
  unsigned char bytes[8];
  while (in.read(reinterpret_cast<char*>(bytes), 8)) {
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(bytes[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    values.push_back(v);
  }
  if (in.gcount() != 0 || values.size() < 3) {
    throw Error(ErrorCode::kSchemaError, "truncated checkpoint " + path);
  }
  ToyEncoderParams p;
  const auto dim = [&](size_t i) { return static_cast<Eigen::Index>(values[i]); };
  if (dim(0) <= 0 || dim(1) <= 0 || dim(2) < 2) {
    throw Error(ErrorCode::kSchemaError, "bad checkpoint header in " + path);
  }
  p.text_proj.resize(dim(0), dim(2));
  p.img_proj.resize(dim(1), dim(2));
  p.Unflatten(std::vector<double>(values.begin() + 3, values.end()));
  return p;
}

void ToyEncoderParams::Validate() const {
  if (dim() < 2 || img_proj.cols() != text_proj.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "encoder output dims must agree and be >= 2");
  }
  if (!text_proj.allFinite() || !img_proj.allFinite() ||
      !std::isfinite(log_temperature)) {
    throw Error(ErrorCode::kInvalidArgument, "encoder parameters not finite");
  }
}

PoolingOperator::PoolingOperator(int height, int width, int channels, int grid)
    : height_(height), width_(width), channels_(channels), grid_(grid) {
  if (height < 1 || width < 1 || channels < 1 || grid < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad pooling geometry");
  }
  const Matrix wy = AreaWeights(height, grid);
  const Matrix wx = AreaWeights(width, grid);
  m_ = Matrix::Zero(grid * grid, static_cast<Eigen::Index>(height) * width * channels);
  for (int r = 0; r < grid; ++r) {
    for (int c = 0; c < grid; ++c) {
      for (int y = 0; y < height; ++y) {
        if (wy(r, y) == 0) continue;
        for (int x = 0; x < width; ++x) {
          const double w = wy(r, y) * wx(c, x) / channels;
          if (w == 0) continue;
          for (int ch = 0; ch < channels; ++ch) {
            m_(r * grid + c, (static_cast<Eigen::Index>(y) * width + x) * channels + ch) = w;
          }
        }
      }
    }
  }
}

Vector PoolingOperator::Pool(const ImageTensor& image) const {
  if (image.height() != height_ || image.width() != width_ ||
      image.channels() != channels_) {
    throw Error(ErrorCode::kDimensionMismatch, "image shape does not match pooling operator");
  }
  return m_ * Eigen::Map<const Vector>(image.values().data(),
                                       static_cast<Eigen::Index>(image.values().size()));
}

Vector PoolingOperator::Backward(const Vector& pooled_grad) const {
  return m_.transpose() * pooled_grad;
}

}  // namespace pathobench::losses
