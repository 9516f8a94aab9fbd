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

#include "core/signal.hpp"

#include <algorithm>
#include <cmath>

namespace iqg {

namespace {

constexpr Kernel3 kPrewittX = {
    {-1.0 / 3, 0, 1.0 / 3, -1.0 / 3, 0, 1.0 / 3, -1.0 / 3, 0, 1.0 / 3}};
constexpr Kernel3 kPrewittY = {
    {-1.0 / 3, -1.0 / 3, -1.0 / 3, 0, 0, 0, 1.0 / 3, 1.0 / 3, 1.0 / 3}};
constexpr Kernel3 kSobelX = {
    {-1.0 / 4, 0, 1.0 / 4, -2.0 / 4, 0, 2.0 / 4, -1.0 / 4, 0, 1.0 / 4}};
constexpr Kernel3 kSobelY = {
    {-1.0 / 4, -2.0 / 4, -1.0 / 4, 0, 0, 0, 1.0 / 4, 2.0 / 4, 1.0 / 4}};

inline int clamp_index(int i, int n) { return std::min(n - 1, std::max(0, i)); }

// Symmetric reflection (edge sample repeated): -1 -> 0, n -> n-1.
inline int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-static_cast<double>(i) * i / (2.0 * sigma * sigma));
    k[i + radius] = w;
    sum += w;
  }
  for (double& w : k) w /= sum;
  return k;
}

}  // namespace

const Kernel3& prewitt_x() { return kPrewittX; }
const Kernel3& prewitt_y() { return kPrewittY; }
const Kernel3& sobel_x() { return kSobelX; }
const Kernel3& sobel_y() { return kSobelY; }

Plane convolve3(const Plane& plane, const Kernel3& kernel, Border) {
  require(plane.width >= 3 && plane.height >= 3, Status::kInvalidArgument,
          "convolve3: plane must be at least 3x3");
  Plane out(plane.width, plane.height);
  const int w = plane.width;
  const int h = plane.height;
  for (int y = 0; y < h; ++y) {
    const int ym = clamp_index(y - 1, h);
    const int yp = clamp_index(y + 1, h);
    const double* r0 = &plane.v[static_cast<std::size_t>(ym) * w];
    const double* r1 = &plane.v[static_cast<std::size_t>(y) * w];
    const double* r2 = &plane.v[static_cast<std::size_t>(yp) * w];
    double* dst = &out.v[static_cast<std::size_t>(y) * w];
    for (int x = 0; x < w; ++x) {
      const int xm = clamp_index(x - 1, w);
      const int xp = clamp_index(x + 1, w);
      dst[x] = kernel.k[0] * r0[xm] + kernel.k[1] * r0[x] + kernel.k[2] * r0[xp] +
               kernel.k[3] * r1[xm] + kernel.k[4] * r1[x] + kernel.k[5] * r1[xp] +
               kernel.k[6] * r2[xm] + kernel.k[7] * r2[x] + kernel.k[8] * r2[xp];
    }
  }
  return out;
}

Plane gradient_magnitude(const Plane& plane, GradientFilter filter) {
  const Kernel3& kx = filter == GradientFilter::kSobel ? sobel_x() : prewitt_x();
  const Kernel3& ky = filter == GradientFilter::kSobel ? sobel_y() : prewitt_y();
  Plane gx = convolve3(plane, kx);
  Plane gy = convolve3(plane, ky);
  Plane out(plane.width, plane.height);
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    out.v[i] = std::sqrt(gx.v[i] * gx.v[i] + gy.v[i] * gy.v[i] + kGradientEpsilon);
  }
  return out;
}

std::vector<double> gaussian_smooth_series(const std::vector<double>& series,
                                           double sigma) {
  require(!series.empty(), Status::kInvalidArgument,
          "gaussian_smooth_series: empty series");
  require(std::isfinite(sigma) && sigma > 0.0, Status::kInvalidArgument,
          "gaussian_smooth_series: sigma must be positive");
  const std::vector<double> k = gaussian_kernel(sigma);
  const int radius = (static_cast<int>(k.size()) - 1) / 2;
  const int n = static_cast<int>(series.size());
  std::vector<double> out(series.size());
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = -radius; j <= radius; ++j) {
      acc += k[j + radius] * series[reflect_index(i + j, n)];
    }
    out[i] = acc;
  }
  return out;
}

void separable_gaussian_blur(double* data, int width, int height, int channels,
                             double sigma) {
  require(sigma > 0.0, Status::kInvalidArgument, "blur: sigma must be positive");
  const std::vector<double> k = gaussian_kernel(sigma);
  const int radius = (static_cast<int>(k.size()) - 1) / 2;
  std::vector<double> tmp(static_cast<std::size_t>(width) * height * channels);

  // Horizontal pass, replicate border.
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < channels; ++c) {
        double acc = 0.0;
        for (int j = -radius; j <= radius; ++j) {
          const int xs = clamp_index(x + j, width);
          acc += k[j + radius] *
                 data[(static_cast<std::size_t>(y) * width + xs) * channels + c];
        }
        tmp[(static_cast<std::size_t>(y) * width + x) * channels + c] = acc;
      }
    }
  }
  // Vertical pass.
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < channels; ++c) {
        double acc = 0.0;
        for (int j = -radius; j <= radius; ++j) {
          const int ys = clamp_index(y + j, height);
          acc += k[j + radius] *
                 tmp[(static_cast<std::size_t>(ys) * width + x) * channels + c];
        }
        data[(static_cast<std::size_t>(y) * width + x) * channels + c] = acc;
      }
    }
  }
}

}  // namespace iqg
