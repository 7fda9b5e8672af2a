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

#ifndef PATHOBENCH_LOSSES_ENCODER_H_
#define PATHOBENCH_LOSSES_ENCODER_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pathobench/core/image.h"
#include "pathobench/core/rng.h"

namespace pathobench::losses {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Default inverse temperature, 1 / 0.02.
inline constexpr double kDefaultTemperature = 50.0;

// Linear dual encoder: f_T(x) = text_proj^T x, f_I(v) = img_proj^T v, where v
// is the pooled image (see PoolingOperator).
struct ToyEncoderParams {
  Matrix text_proj;  // text_dim x d
  Matrix img_proj;   // image_dim x d
  double log_temperature = 0.0;

  static ToyEncoderParams Random(size_t text_dim, size_t image_dim, size_t d,
                                 Rng& rng);

  size_t text_dim() const { return static_cast<size_t>(text_proj.rows()); }
  size_t image_dim() const { return static_cast<size_t>(img_proj.rows()); }
  size_t dim() const { return static_cast<size_t>(text_proj.cols()); }
  double temperature() const;

  Vector EncodeText(const Vector& x) const;
  Vector EncodeImage(const Vector& pooled) const;

  // Flat order: text_proj row-major, img_proj row-major, log_temperature.
  size_t NumParams() const;
  std::vector<double> Flatten() const;
  void Unflatten(const std::vector<double>& flat);

  // Checkpoint: little-endian float64 values text_dim, image_dim, d, then
  // Flatten().
  void Save(const std::string& path) const;
  static ToyEncoderParams Load(const std::string& path);

  void Validate() const;
};

// Gray, area-averaged downsampling of an HxWxC image to grid x grid cells.
// Linear in the pixels, so pixel gradients are Matrix()^T times the gradient
// with respect to the pooled vector.
class PoolingOperator {
 public:
  PoolingOperator(int height, int width, int channels, int grid = 8);

  Vector Pool(const ImageTensor& image) const;
  // Gradient with respect to the pixel buffer, laid out like ImageTensor.
  Vector Backward(const Vector& pooled_grad) const;

  const Matrix& matrix() const { return m_; }
  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  int grid() const { return grid_; }

 private:
  int height_, width_, channels_, grid_;
  Matrix m_;  // grid^2 x (H*W*C)
};

}  // namespace pathobench::losses

#endif  // PATHOBENCH_LOSSES_ENCODER_H_
