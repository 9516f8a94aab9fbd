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

#include "core/image.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "core/signal.hpp"

namespace iqg {

Image::Image(int w, int h, int c, double fill)
    : width(w),
      height(h),
      channels(c),
      data(static_cast<std::size_t>(w) * h * c, fill) {
  check_image(*this, "image");
}

void check_image(const Image& img, const char* what) {
  require(img.width > 0 && img.height > 0, Status::kInvalidArgument,
          std::string(what) + ": zero dimension");
  require(img.channels == 1 || img.channels == 3, Status::kInvalidArgument,
          std::string(what) + ": channels must be 1 or 3");
  require(img.data.size() == static_cast<std::size_t>(img.width) * img.height *
                                 img.channels,
          Status::kInvalidArgument, std::string(what) + ": data length");
  for (double v : img.data) {
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0, Status::kInvalidArgument,
            std::string(what) + ": sample outside [0,1]");
  }
}

YiqPlanes rgb_to_yiq(const Image& img) {
  require(img.channels == 3, Status::kInvalidArgument,
          "rgb_to_yiq: 3-channel input required");
  YiqPlanes out{Plane(img.width, img.height), Plane(img.width, img.height),
                Plane(img.width, img.height)};
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  for (std::size_t p = 0; p < n; ++p) {
    const double r = img.data[3 * p];
    const double g = img.data[3 * p + 1];
    const double b = img.data[3 * p + 2];
    out.y.v[p] = kYiqMatrix[0][0] * r + kYiqMatrix[0][1] * g + kYiqMatrix[0][2] * b;
    out.i.v[p] = kYiqMatrix[1][0] * r + kYiqMatrix[1][1] * g + kYiqMatrix[1][2] * b;
    out.q.v[p] = kYiqMatrix[2][0] * r + kYiqMatrix[2][1] * g + kYiqMatrix[2][2] * b;
  }
  return out;
}

Plane luminance_plane(const Image& img) {
  require(img.channels == 1 || img.channels == 3, Status::kInvalidArgument,
          "luminance: 1 or 3 channels required");
  Plane out(img.width, img.height);
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  if (img.channels == 1) {
    out.v = img.data;
    return out;
  }
  for (std::size_t p = 0; p < n; ++p) {
    out.v[p] = kYiqMatrix[0][0] * img.data[3 * p] +
               kYiqMatrix[0][1] * img.data[3 * p + 1] +
               kYiqMatrix[0][2] * img.data[3 * p + 2];
  }
  return out;
}

Image luminance(const Image& img) {
  Plane y = luminance_plane(img);
  Image out;
  out.width = img.width;
  out.height = img.height;
  out.channels = 1;
  out.data = std::move(y.v);
  return out;
}

double mse(const Image& a, const Image& b, MseScale scale) {
  require(a.width == b.width && a.height == b.height && a.channels == b.channels,
          Status::kInvalidArgument, "mse: dimension mismatch");
  const double s = scale == MseScale::kEightBit ? 255.0 : 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = (a.data[i] - b.data[i]) * s;
    acc += d * d;
  }
  return acc / static_cast<double>(a.data.size());
}

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

Image apply_constant_shift(const Image& img, double delta) {
  Image out = img;
  for (double& v : out.data) v = clamp01(v + delta);
  return out;
}

Image apply_contrast_stretch(const Image& img, double strength) {
  // Stretch each channel about its own mean by a factor of (1 + strength).
  Image out = img;
  std::vector<double> mean(img.channels, 0.0);
  const std::size_t pixels = static_cast<std::size_t>(img.width) * img.height;
  for (std::size_t p = 0; p < pixels; ++p)
    for (int c = 0; c < img.channels; ++c) mean[c] += img.data[p * img.channels + c];
  for (double& m : mean) m /= static_cast<double>(pixels);
  for (std::size_t p = 0; p < pixels; ++p) {
    for (int c = 0; c < img.channels; ++c) {
      const double x = img.data[p * img.channels + c];
      out.data[p * img.channels + c] = clamp01(mean[c] + (1.0 + strength) * (x - mean[c]));
    }
  }
  return out;
}

struct ImpulsePlan {
  std::vector<std::size_t> order;  // sample indices in a fixed random order
  std::vector<double> value;       // replacement value per sample, 0 or 1
};

ImpulsePlan make_impulse_plan(const Image& img, std::uint64_t seed) {
  ImpulsePlan plan;
  plan.order.resize(img.data.size());
  plan.value.resize(img.data.size());
  Rng rng(derive_seed(seed, 0x1395));
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    plan.order[i] = i;
    plan.value[i] = rng.uniform() < 0.5 ? 0.0 : 1.0;
  }
  for (std::size_t i = plan.order.size(); i > 1; --i)
    std::swap(plan.order[i - 1], plan.order[rng.below(i)]);
  return plan;
}

// Strength s in [0, N]: the first floor(s) samples of the plan flip fully to
// their salt/pepper value, the next one flips by the fractional part. The
// partial flip makes the MSE response continuous and monotone in s, so
// bisection can land within 1% even on small images where one full flip
// moves the MSE by more than that.
Image apply_impulse(const Image& img, const ImpulsePlan& plan, double s) {
  Image out = img;
  const std::size_t full = std::min(plan.order.size(),
                                    static_cast<std::size_t>(std::floor(s)));
  for (std::size_t i = 0; i < full; ++i) {
    const std::size_t idx = plan.order[i];
    out.data[idx] = plan.value[idx];
  }
  const double frac = s - std::floor(s);
  if (frac > 0.0 && full < plan.order.size()) {
    const std::size_t idx = plan.order[full];
    out.data[idx] += frac * (plan.value[idx] - out.data[idx]);
  }
  return out;
}

Image apply_blur(const Image& img, double sigma) {
  if (sigma <= 0.0) return img;
  Image out = img;
  separable_gaussian_blur(out.data.data(), img.width, img.height, img.channels,
                          sigma);
  for (double& v : out.data) v = clamp01(v);
  return out;
}

Image solve_distortion(const Image& img, double target,
                       const std::function<Image(double)>& apply, double hi) {
  // 60 bisection iterations on [0, hi]; the response is nondecreasing in the
  // strength parameter for every kind.
  const double hi_mse = mse(img, apply(hi), MseScale::kEightBit);
  require(hi_mse >= 0.99 * target, Status::kUnreachableTarget,
          "make_distortion: target MSE unreachable for this image");
  double lo = 0.0;
  double best_err = std::abs(mse(img, apply(hi), MseScale::kEightBit) - target);
  double best = hi;
  double hi_param = hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi_param);
    const double m = mse(img, apply(mid), MseScale::kEightBit);
    const double err = std::abs(m - target);
    if (err < best_err) {
      best_err = err;
      best = mid;
    }
    if (m < target)
      lo = mid;
    else
      hi_param = mid;
  }
  require(best_err <= 0.01 * target, Status::kUnreachableTarget,
          "make_distortion: bisection could not land within 1% of target");
  return apply(best);
}

}  // namespace

Image make_distortion(const Image& img, DistortionKind kind, double target_mse,
                      std::uint64_t seed) {
  check_image(img, "make_distortion");
  require(std::isfinite(target_mse) && target_mse >= 0.0,
          Status::kInvalidArgument, "make_distortion: bad target");
  if (target_mse == 0.0) return img;

  switch (kind) {
    case DistortionKind::kConstantShift:
      return solve_distortion(
          img, target_mse, [&](double d) { return apply_constant_shift(img, d); },
          1.0);
    case DistortionKind::kContrastStretch:
      return solve_distortion(
          img, target_mse,
          [&](double s) { return apply_contrast_stretch(img, s); }, 100.0);
    case DistortionKind::kImpulseNoise: {
      const ImpulsePlan plan = make_impulse_plan(img, seed);
      return solve_distortion(
          img, target_mse, [&](double s) { return apply_impulse(img, plan, s); },
          static_cast<double>(img.data.size()));
    }
    case DistortionKind::kGaussianBlur:
      return solve_distortion(
          img, target_mse, [&](double s) { return apply_blur(img, s); },
          static_cast<double>(std::max(8, std::max(img.width, img.height) / 2)));
  }
  fail(Status::kInvalidArgument, "make_distortion: unknown kind");
}

}  // namespace iqg
