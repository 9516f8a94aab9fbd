// Copyright 2026 The iqgan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IQGAN_CORE_IMAGE_HPP_
#define IQGAN_CORE_IMAGE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace iqg {

// Row-major, channel-interleaved pixel array with values in [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1 (grayscale) or 3 (RGB)
  std::vector<double> data;

  Image() = default;
  Image(int w, int h, int c, double fill = 0.0);

  double& at(int y, int x, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  double at(int y, int x, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::size_t sample_count() const { return data.size(); }
};

// Throws unless dimensions, channel count and every sample are valid.
void check_image(const Image& img, const char* what = "image");

// Single H x W plane of reals (luminance, chrominance, gradient and
// similarity maps all use this shape).
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> v;

  Plane() = default;
  Plane(int w, int h, double fill = 0.0)
      : width(w), height(h), v(static_cast<std::size_t>(w) * h, fill) {}

  double& at(int y, int x) { return v[static_cast<std::size_t>(y) * width + x]; }
  double at(int y, int x) const {
    return v[static_cast<std::size_t>(y) * width + x];
  }
};

struct YiqPlanes {
  Plane y;
  Plane i;
  Plane q;
};

// NTSC/FCC RGB -> YIQ matrix, rows Y, I, Q.
inline constexpr double kYiqMatrix[3][3] = {
    {0.299, 0.587, 0.114},
    {0.5959, -0.2746, -0.3213},
    {0.2115, -0.5227, 0.3112},
};

// Row-sum bounds of the I and Q rows; the I/Q planes live in +-these.
inline constexpr double kIBound = 0.5959;
inline constexpr double kQBound = 0.5227;

YiqPlanes rgb_to_yiq(const Image& img);

// Y plane of a 3-channel image; 1-channel input is passed through.
Plane luminance_plane(const Image& img);
Image luminance(const Image& img);

enum class MseScale { kUnit, kEightBit };

double mse(const Image& a, const Image& b, MseScale scale);

enum class DistortionKind {
  kConstantShift,
  kContrastStretch,
  kImpulseNoise,
  kGaussianBlur,
};

// Produces a distorted copy whose eight-bit MSE from `img` lands within 1%
// of target_mse. The strength parameter is found by bisection; throws
// Status::kUnreachableTarget when the kind cannot reach the target on this
// image. Deterministic for a given seed.
Image make_distortion(const Image& img, DistortionKind kind, double target_mse,
                      std::uint64_t seed);

// File I/O. Format chosen by content on load and by extension on save
// (.png, .ppm, .pgm). 8-bit samples map s -> s/255; saving quantizes
// round-half-up to the nearest 8-bit level.
Image load_image(const std::string& path);
void save_image(const Image& img, const std::string& path);

// In-memory PPM/PGM codecs; P6 for 3 channels, P5 for 1 channel.
std::vector<std::uint8_t> encode_pnm(const Image& img);
Image decode_pnm(const std::uint8_t* bytes, std::size_t size);

}  // namespace iqg

#endif  // IQGAN_CORE_IMAGE_HPP_
