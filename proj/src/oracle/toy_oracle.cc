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

#include "pathobench/oracle/toy_oracle.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "pathobench/core/error.h"
#include "pathobench/core/hash.h"
#include "pathobench/core/rng.h"
#include "pathobench/core/text.h"
#include "pathobench/oracle/embedding.h"

namespace pathobench::oracle {

namespace {

constexpr size_t kStatsDims = 22;
constexpr double kStatsWeight = 0.1;
// Pixel RMS of the prompt-carrying pattern in generated images.
constexpr double kPatternRms = 0.12;
constexpr double kNoiseAmplitude = 0.08;

constexpr std::array<std::string_view, 6> kContinuations = {
    "findings are consistent with the described morphology.",
    "the pattern supports the stated diagnostic impression.",
    "correlate with clinical history and ancillary studies.",
    "architectural and cytological features agree with this reading.",
    "no additional atypical features are described.",
    "the overall appearance favours this interpretation.",
};

// Answered with an error response carrying `code`.
struct CodedFailure : std::runtime_error {
  CodedFailure(int code, const std::string& message)
      : std::runtime_error(message), code(code) {}
  int code;
};

struct InvalidParams : CodedFailure {
  explicit InvalidParams(const std::string& message)
      : CodedFailure(codes::kInvalidParams, message) {}
};

template <typename T>
T Param(const Json& params, const char* key) {
  if (!params.contains(key)) {
    throw InvalidParams(std::string("missing param '") + key + "'");
  }
  try {
    return params.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InvalidParams(std::string("bad type for param '") + key + "'");
  }
}

template <typename T>
T ParamOr(const Json& params, const char* key, T fallback) {
  return params.contains(key) ? Param<T>(params, key) : fallback;
}

double SmoothStep(double t) { return t * t * (3.0 - 2.0 * t); }

// Two-octave value noise in [-1, 1], seeded per prompt.
std::vector<double> ValueNoise(int height, int width, Rng rng) {
  std::vector<double> out(static_cast<size_t>(height) * width, 0.0);
  double amplitude = 1.0;
  double total = 0.0;
  for (int cells : {4, 8}) {
    const int n = cells + 1;
    std::vector<double> lattice(static_cast<size_t>(n) * n);
    for (double& v : lattice) v = 2.0 * rng.Uniform() - 1.0;
    for (int y = 0; y < height; ++y) {
      const double fy = (y + 0.5) / height * cells;
      const int y0 = std::min(static_cast<int>(fy), cells - 1);
      const double ty = SmoothStep(fy - y0);
      for (int x = 0; x < width; ++x) {
        const double fx = (x + 0.5) / width * cells;
        const int x0 = std::min(static_cast<int>(fx), cells - 1);
        const double tx = SmoothStep(fx - x0);
        const double a = lattice[y0 * n + x0];
        const double b = lattice[y0 * n + x0 + 1];
        const double c = lattice[(y0 + 1) * n + x0];
        const double d = lattice[(y0 + 1) * n + x0 + 1];
        const double top = a + (b - a) * tx;
        const double bottom = c + (d - c) * tx;
        out[static_cast<size_t>(y) * width + x] +=
            amplitude * (top + (bottom - top) * ty);
      }
    }
    total += amplitude;
    amplitude *= 0.5;
  }
  for (double& v : out) v /= total;
  return out;
}

std::vector<double> Gray(const ImageTensor& image) {
  std::vector<double> g(static_cast<size_t>(image.height()) * image.width());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      double s = 0.0;
      for (int c = 0; c < image.channels(); ++c) s += image.at(y, x, c);
      g[static_cast<size_t>(y) * image.width() + x] = s / image.channels();
    }
  }
  return g;
}

// Linear soft binning keeps the histogram continuous in its input.
void SoftBin(std::span<double> bins, double position, double weight,
             bool circular) {
  const double n = static_cast<double>(bins.size());
  double p = position * n - 0.5;
  if (!circular) p = std::clamp(p, 0.0, n - 1.0);
  const double f = std::floor(p);
  const double t = p - f;
  auto wrap = [&](long i) {
    if (circular) return static_cast<size_t>(((i % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n));
    return static_cast<size_t>(std::clamp<long>(i, 0, static_cast<long>(n) - 1));
  };
  bins[wrap(static_cast<long>(f))] += weight * (1.0 - t);
  bins[wrap(static_cast<long>(f) + 1)] += weight * t;
}

std::array<double, kStatsDims> ImageStats(const ImageTensor& image) {
  std::array<double, kStatsDims> s{};
  const double count = static_cast<double>(image.height()) * image.width();
  for (int c = 0; c < 3; ++c) {
    const int src = image.channels() == 1 ? 0 : c;
    double mean = 0.0;
    double sq = 0.0;
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        const double v = image.at(y, x, src);
        mean += v;
        sq += v * v;
      }
    }
    mean /= count;
    s[c] = mean;
    s[3 + c] = std::max(0.0, sq / count - mean * mean);
  }
  const std::vector<double> g = Gray(image);
  const int h = image.height();
  const int w = image.width();
  auto at = [&](int y, int x) {
    y = std::clamp(y, 0, h - 1);
    x = std::clamp(x, 0, w - 1);
    return g[static_cast<size_t>(y) * w + x];
  };
  std::span<double> magnitude(s.data() + 6, 8);
  std::span<double> orientation(s.data() + 14, 8);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = 0.5 * (at(y, x + 1) - at(y, x - 1));
      const double gy = 0.5 * (at(y + 1, x) - at(y - 1, x));
      const double mag = std::hypot(gx, gy);
      SoftBin(magnitude, std::min(mag / 0.5, 1.0), 1.0 / count, false);
      if (mag > 0.0) {
        const double angle = (std::atan2(gy, gx) + std::numbers::pi) /
                             (2.0 * std::numbers::pi);
        SoftBin(orientation, angle, mag / count, true);
      }
    }
  }
  return s;
}

}  // namespace

ToyOracle::ToyOracle(ToyOracleOptions options) : options_(std::move(options)) {
  if (options_.dim < 2) {
    throw Error(ErrorCode::kInvalidArgument, "toy oracle dim must be >= 2");
  }
  Rng rng(Mix64(options_.seed ^ 0x5717a75ULL));
  const double scale = 1.0 / std::sqrt(static_cast<double>(kStatsDims));
  stats_projection_.assign(options_.dim, std::vector<double>(kStatsDims));
  for (auto& row : stats_projection_) {
    for (double& v : row) v = rng.Normal() * scale;
  }
}

std::shared_ptr<const std::vector<std::vector<double>>> ToyOracle::Basis(
    int height, int width) const {
  std::lock_guard<std::mutex> lock(basis_mu_);
  auto& slot = basis_cache_[{height, width}];
  if (!slot) {
    Rng rng(Mix64(options_.seed ^ 0xba515ULL));
    Rng shape_rng = rng.Split(static_cast<uint64_t>(height) << 32 |
                              static_cast<uint32_t>(width));
    const size_t n = static_cast<size_t>(height) * width;
    const double v = 1.0 / std::sqrt(static_cast<double>(n));
    auto basis = std::make_shared<std::vector<std::vector<double>>>(
        options_.dim, std::vector<double>(n));
    for (auto& pattern : *basis) {
      for (double& p : pattern) p = (shape_rng.NextU64() >> 63) ? v : -v;
    }
    slot = std::move(basis);
  }
  return slot;
}

std::vector<double> ToyOracle::EmbedText(std::string_view text) const {
  const std::string padded = " " + FoldCase(text) + " ";
  std::vector<double> v(options_.dim, 0.0);
  const uint64_t salt = Mix64(options_.seed ^ 0x7e47ULL);
  for (size_t i = 0; i + 3 <= padded.size(); ++i) {
    const uint64_t h = Mix64(Fnv1a64(std::string_view(padded).substr(i, 3)) ^ salt);
    const double sign = (h >> 63) ? 1.0 : -1.0;
    v[(h >> 1) % options_.dim] += sign;
  }
  if (Norm(v) == 0.0) v[0] = 1.0;
  NormalizeInPlace(v);
  return v;
}

std::vector<double> ToyOracle::EmbedImage(const ImageTensor& image) const {
  if (image.empty()) throw Error(ErrorCode::kDecodeError, "empty image");
  const auto basis = Basis(image.height(), image.width());
  std::vector<double> g = Gray(image);
  double mean = 0.0;
  for (double v : g) mean += v;
  mean /= static_cast<double>(g.size());
  for (double& v : g) v -= mean;
  const auto stats = ImageStats(image);
  std::vector<double> e(options_.dim, 0.0);
  for (size_t k = 0; k < options_.dim; ++k) {
    e[k] = Dot((*basis)[k], g);
    double proj = 0.0;
    for (size_t j = 0; j < kStatsDims; ++j) {
      proj += stats_projection_[k][j] * stats[j];
    }
    e[k] += kStatsWeight * proj;
  }
  if (Norm(e) == 0.0) e[0] = 1.0;
  NormalizeInPlace(e);
  return e;
}

std::vector<MaskCandidate> ToyOracle::MaskFill(std::string_view text,
                                               size_t start, size_t end,
                                               size_t k, bool exclude_original,
                                               uint64_t seed) const {
  if (start >= end || end > text.size()) {
    throw Error(ErrorCode::kSpanOutOfBounds, "mask span out of bounds");
  }
  const std::string original = FoldCase(text.substr(start, end - start));
  std::vector<std::string> pool;
  for (const auto& group : options_.term_groups) {
    for (const std::string& term : group) {
      if (FoldCase(term) == original) {
        pool = group;
        break;
      }
    }
    if (!pool.empty()) break;
  }
  if (pool.empty()) {
    for (const auto& group : options_.term_groups) {
      pool.insert(pool.end(), group.begin(), group.end());
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  // Context: the text with the masked bytes removed.
  const std::string context = std::string(text.substr(0, start)) + "[MASK]" +
                              std::string(text.substr(end));
  const uint64_t base =
      Mix64(Fnv1a64(context) ^ Mix64(seed ^ Mix64(options_.seed)));
  std::vector<MaskCandidate> out;
  for (const std::string& term : pool) {
    if (exclude_original && FoldCase(term) == original) continue;
    const uint64_t h = Mix64(Fnv1a64(term) ^ base);
    out.push_back({term, static_cast<double>(h >> 11) * 0x1.0p-53});
  }
  std::sort(out.begin(), out.end(),
            [](const MaskCandidate& a, const MaskCandidate& b) {
              return a.score != b.score ? a.score > b.score : a.token < b.token;
            });
  if (out.size() > k) out.resize(k);
  return out;
}

std::string ToyOracle::GenerateText(std::string_view prompt,
                                    uint64_t seed) const {
  // The last non-empty prompt line is the content to elaborate on.
  std::string_view last;
  size_t pos = 0;
  while (pos <= prompt.size()) {
    size_t nl = prompt.find('\n', pos);
    if (nl == std::string_view::npos) nl = prompt.size();
    std::string_view line = prompt.substr(pos, nl - pos);
    while (!line.empty() && IsSpaceByte(static_cast<unsigned char>(line.back())))
      line.remove_suffix(1);
    if (!line.empty()) last = line;
    pos = nl + 1;
  }
  const uint64_t h = Mix64(Fnv1a64(prompt) ^ Mix64(seed ^ options_.seed));
  return std::string(last) + ". " +
         std::string(kContinuations[h % kContinuations.size()]);
}

ImageTensor ToyOracle::GenerateImage(std::string_view prompt, uint64_t seed,
                                     int height, int width,
                                     int channels) const {
  ImageTensor image(height, width, channels);
  const auto basis = Basis(height, width);
  const std::vector<double> t = EmbedText(prompt);
  const size_t n = static_cast<size_t>(height) * width;
  const double scale = kPatternRms * std::sqrt(static_cast<double>(n));
  Rng rng(Mix64(Fnv1a64(prompt) ^ Mix64(seed ^ options_.seed)));
  const std::vector<double> noise = ValueNoise(height, width, rng.Split(1));
  Rng tint_rng = rng.Split(2);
  // Per-channel gains averaging to one keep the gray pattern intact.
  std::array<double, 3> tint{1.0, 1.0, 1.0};
  if (channels == 3) {
    tint = {1.0 + 0.1 * tint_rng.Uniform(), 1.0 - 0.1 * tint_rng.Uniform(), 1.0};
    tint[2] = 3.0 - tint[0] - tint[1];
  }
  for (size_t p = 0; p < n; ++p) {
    double pattern = 0.0;
    for (size_t k = 0; k < options_.dim; ++k) pattern += t[k] * (*basis)[k][p];
    const double base = 0.5 + scale * pattern + kNoiseAmplitude * noise[p];
    for (int c = 0; c < channels; ++c) {
      image.values()[p * channels + c] = std::clamp(base * tint[c], 0.0, 1.0);
    }
  }
  return image;
}

Json ToyOracle::Dispatch(Method method, const Json& params) const {
  if (options_.disabled.contains(method)) {
    throw CodedFailure(codes::kDisabled,
                       std::string(MethodName(method)) + " is disabled");
  }
  switch (method) {
    case Method::kEmbedText: {
      const auto texts = Param<std::vector<std::string>>(params, "texts");
      if (texts.empty() || texts.size() > kMaxBatch) {
        throw InvalidParams("texts must hold 1..64 entries");
      }
      Json out = Json::array();
      for (const std::string& t : texts) out.push_back(EmbedText(t));
      return Json{{"embeddings", std::move(out)}, {"dim", options_.dim}};
    }
    case Method::kEmbedImage: {
      const auto images = Param<std::vector<std::string>>(params, "images");
      if (images.empty() || images.size() > kMaxBatch) {
        throw InvalidParams("images must hold 1..64 entries");
      }
      Json out = Json::array();
      for (const std::string& b64 : images) {
        out.push_back(EmbedImage(DecodePng(Base64Decode(b64))));
      }
      return Json{{"embeddings", std::move(out)}, {"dim", options_.dim}};
    }
    case Method::kMaskFill: {
      const auto text = Param<std::string>(params, "text");
      const auto k = Param<size_t>(params, "k");
      if (k == 0) throw InvalidParams("k must be >= 1");
      const auto candidates = MaskFill(
          text, Param<size_t>(params, "start"), Param<size_t>(params, "end"), k,
          ParamOr<bool>(params, "exclude_original", true),
          ParamOr<uint64_t>(params, "seed", 0));
      Json out = Json::array();
      for (const MaskCandidate& c : candidates) {
        out.push_back(Json{{"token", c.token}, {"score", c.score}});
      }
      return Json{{"candidates", std::move(out)}};
    }
    case Method::kGenerateText:
    case Method::kGenerateImage: {
      const auto prompt = Param<std::string>(params, "prompt");
      if (prompt.empty()) throw InvalidParams("prompt must be non-empty");
      for (const std::string& s : options_.refuse_substrings) {
        if (prompt.find(s) != std::string::npos) {
          throw CodedFailure(codes::kGenerationRefused,
                             "prompt refused by content filter");
        }
      }
      const auto seed = ParamOr<uint64_t>(params, "seed", 0);
      if (method == Method::kGenerateText) {
        return Json{{"text", GenerateText(prompt, seed)}};
      }
      const int h = ParamOr<int>(params, "height", 32);
      const int w = ParamOr<int>(params, "width", 32);
      const int c = ParamOr<int>(params, "channels", 3);
      if (h <= 0 || w <= 0 || h > 4096 || w > 4096 || (c != 1 && c != 3)) {
        throw InvalidParams("bad image geometry");
      }
      return Json{{"image", Base64Encode(EncodePng(GenerateImage(prompt, seed, h, w, c)))}};
    }
  }
  throw InvalidParams("unhandled method");
}

Json ToyOracle::Handle(const Json& request) const {
  if (std::string defect = CheckRequestEnvelope(request); !defect.empty()) {
    const Json id = request.is_object() && request.contains("id") &&
                            request["id"].is_number_unsigned()
                        ? request["id"]
                        : Json(nullptr);
    return MakeError(id, codes::kMalformedRequest, defect);
  }
  const Json& id = request["id"];
  const auto method = ParseMethod(request["method"].get<std::string>());
  if (!method) {
    return MakeError(id, codes::kUnknownMethod,
                     "unknown method '" + request["method"].get<std::string>() + "'");
  }
  try {
    return MakeResult(id, Dispatch(*method, request["params"]));
  } catch (const CodedFailure& e) {
    return MakeError(id, e.code, e.what());
  } catch (const Error& e) {
    const int code = e.code() == ErrorCode::kSpanOutOfBounds ||
                             e.code() == ErrorCode::kDecodeError
                         ? codes::kInvalidParams
                         : codes::kInternal;
    return MakeError(id, code, e.what());
  } catch (const std::exception& e) {
    return MakeError(id, codes::kInternal, e.what());
  }
}

std::string ToyOracle::HandleLine(std::string_view line) const {
  Json request;
  try {
    request = Json::parse(line);
  } catch (const Json::exception& e) {
    return MakeError(nullptr, codes::kMalformedRequest,
                     std::string("unparseable request: ") + e.what())
        .dump();
  }
  return Handle(request).dump();
}

}  // namespace pathobench::oracle
