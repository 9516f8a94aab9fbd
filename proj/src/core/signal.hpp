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

#ifndef IQGAN_CORE_SIGNAL_HPP_
#define IQGAN_CORE_SIGNAL_HPP_

#include <vector>

#include "core/image.hpp"

namespace iqg {

struct Kernel3 {
  double k[9];  // row-major 3x3
};

enum class Border { kReplicate };

enum class GradientFilter { kPrewitt, kSobel };

// Normalized gradient kernel pairs. The divisors (3 for Prewitt, 4 for
// Sobel) keep magnitudes of [0,1] inputs near [0, ~1.5] so the similarity
// constant C operates at its intended scale.
const Kernel3& prewitt_x();
const Kernel3& prewitt_y();
const Kernel3& sobel_x();
const Kernel3& sobel_y();

// Epsilon inside the magnitude square root; keeps the map differentiable at
// zero gradient so the trainer can backpropagate through it.
inline constexpr double kGradientEpsilon = 1e-12;

// Same-size 3x3 correlation (kernel not flipped) with replicated edges.
Plane convolve3(const Plane& plane, const Kernel3& kernel,
                Border border = Border::kReplicate);

// Per-pixel sqrt(gx^2 + gy^2 + eps) from the chosen filter pair.
Plane gradient_magnitude(const Plane& plane, GradientFilter filter);

// 1-D Gaussian smoothing with kernel radius ceil(4*sigma), coefficients
// exp(-i^2 / (2 sigma^2)) normalized to sum 1, symmetric-reflected bounds.
// Output length equals input length.
std::vector<double> gaussian_smooth_series(const std::vector<double>& series,
                                           double sigma);

// Separable in-place Gaussian blur on interleaved image data, replicate
// borders, same kernel rule as gaussian_smooth_series.
void separable_gaussian_blur(double* data, int width, int height, int channels,
                             double sigma);

}  // namespace iqg

#endif  // IQGAN_CORE_SIGNAL_HPP_
