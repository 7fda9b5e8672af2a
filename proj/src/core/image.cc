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

#include "pathobench/core/image.h"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pathobench/core/error.h"

namespace pathobench {

ImageTensor::ImageTensor(int height, int width, int channels, double fill)
    : height_(height), width_(width), channels_(channels) {
  if (height <= 0 || width <= 0 || (channels != 1 && channels != 3)) {
    throw Error(ErrorCode::kInvalidArgument,
                "image must be non-empty with 1 or 3 channels");
  }
  values_.assign(static_cast<size_t>(height) * width * channels, fill);
}

std::vector<double> ImageTensor::Channel(int c) const {
  std::vector<double> plane(static_cast<size_t>(height_) * width_);
  for (size_t i = 0; i < plane.size(); ++i) plane[i] = values_[i * channels_ + c];
  return plane;
}

void ImageTensor::SetChannel(int c, const std::vector<double>& plane) {
  for (size_t i = 0; i < plane.size(); ++i) values_[i * channels_ + c] = plane[i];
}

void ImageTensor::Clamp() {
  for (double& v : values_) v = std::clamp(v, 0.0, 1.0);
}

bool ImageTensor::AllFinite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool ImageTensor::SameShape(const ImageTensor& other) const {
  return height_ == other.height_ && width_ == other.width_ &&
         channels_ == other.channels_;
}

double MaxAbsDifference(const ImageTensor& a, const ImageTensor& b) {
  if (!a.SameShape(b)) {
    throw Error(ErrorCode::kLengthMismatch, "image shapes differ");
  }
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

namespace {

struct ReadCursor {
  std::string_view data;
  size_t offset = 0;
};

void ReadFromMemory(png_structp png, png_bytep out, png_size_t length) {
  auto* cursor = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cursor->offset + length > cursor->data.size()) {
    png_error(png, "truncated PNG stream");
  }
  std::memcpy(out, cursor->data.data() + cursor->offset, length);
  cursor->offset += length;
}

void WriteToString(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), length);
}

void FlushNoop(png_structp) {}

struct PngErrorState {
  std::string message;
};

// libpng unwinds through C frames, so errors travel via longjmp and are
// rethrown as exceptions once control is back in the owning frame.
[[noreturn]] void PngErrorHandler(png_structp png, png_const_charp message) {
  static_cast<PngErrorState*>(png_get_error_ptr(png))->message = message;
  png_longjmp(png, 1);
}

void PngWarningHandler(png_structp, png_const_charp) {}

}  // namespace

std::string EncodePng(const ImageTensor& image) {
  if (image.empty()) throw Error(ErrorCode::kInvalidArgument, "empty image");
  PngErrorState state;
  std::string out;
  std::vector<png_byte> row(static_cast<size_t>(image.width()) *
                            image.channels());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &state,
                                            PngErrorHandler, PngWarningHandler);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIoError, "PNG encode failed: " + state.message);
  }
  {
    png_set_write_fn(png, &out, WriteToString, FlushNoop);
    png_set_IHDR(png, info, image.width(), image.height(), 8,
                 image.channels() == 1 ? PNG_COLOR_TYPE_GRAY
                                       : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        for (int c = 0; c < image.channels(); ++c) {
          const double v = std::clamp(image.at(y, x, c), 0.0, 1.0);
          row[static_cast<size_t>(x) * image.channels() + c] =
              static_cast<png_byte>(std::lround(v * 255.0));
        }
      }
      png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
  }
  png_destroy_write_struct(&png, &info);
  return out;
}

ImageTensor DecodePng(std::string_view bytes) {
  if (bytes.size() < 8 ||
      png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) != 0) {
    throw Error(ErrorCode::kDecodeError, "not a PNG stream");
  }
  PngErrorState state;
  ReadCursor cursor{bytes, 0};
  ImageTensor image;
  std::vector<png_byte> row;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state,
                                           PngErrorHandler, PngWarningHandler);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kDecodeError, state.message);
  }
  try {
    png_set_read_fn(png, &cursor, ReadFromMemory);
    png_read_info(png, info);
    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);
    if (depth != 8 ||
        (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_RGB) ||
        png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) {
      throw Error(ErrorCode::kDecodeError,
                  "only 8-bit non-interlaced grayscale/RGB PNG is supported");
    }
    const int channels = color == PNG_COLOR_TYPE_GRAY ? 1 : 3;
    image = ImageTensor(height, width, channels);
    row.resize(static_cast<size_t>(width) * channels);
    for (int y = 0; y < height; ++y) {
      png_read_row(png, row.data(), nullptr);
      for (int x = 0; x < width; ++x) {
        for (int c = 0; c < channels; ++c) {
          image.at(y, x, c) = row[static_cast<size_t>(x) * channels + c] / 255.0;
        }
      }
    }
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

ImageTensor ReadPng(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open image " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return DecodePng(buf.str());
}

void WritePng(const ImageTensor& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write image " + path);
  const std::string bytes = EncodePng(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path);
}

namespace {
constexpr char kAlphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}  // namespace

std::string Base64Encode(std::string_view bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const uint32_t n = (uint8_t(bytes[i]) << 16) | (uint8_t(bytes[i + 1]) << 8) |
                       uint8_t(bytes[i + 2]);
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += kAlphabet[(n >> 6) & 63];
    out += kAlphabet[n & 63];
  }
  if (i < bytes.size()) {
    uint32_t n = uint8_t(bytes[i]) << 16;
    if (i + 1 < bytes.size()) n |= uint8_t(bytes[i + 1]) << 8;
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += i + 1 < bytes.size() ? kAlphabet[(n >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

std::string Base64Decode(std::string_view text) {
  std::array<int, 256> lookup;
  lookup.fill(-1);
  for (int i = 0; i < 64; ++i) lookup[static_cast<uint8_t>(kAlphabet[i])] = i;
  std::string out;
  uint32_t acc = 0;
  int bits = 0;
  for (char ch : text) {
    if (ch == '=') break;
    const int v = lookup[static_cast<uint8_t>(ch)];
    if (v < 0) throw Error(ErrorCode::kDecodeError, "invalid base64");
    acc = (acc << 6) | static_cast<uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<char>((acc >> bits) & 0xff));
    }
  }
  return out;
}

}  // namespace pathobench
