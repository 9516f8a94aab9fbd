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

#include "core/dataset.hpp"

#include <algorithm>
#include <cmath>

namespace iqg {

namespace {

Rgb mix(const Rgb& a, const Rgb& b, double t) {
  return {a.r + t * (b.r - a.r), a.g + t * (b.g - a.g), a.b + t * (b.b - a.b)};
}

// Palette pick that avoids a given entry so shapes contrast with their
// background (no-op for single-color palettes).
std::size_t pick_other(Rng& rng, std::size_t n, std::size_t avoid) {
  if (n < 2) return 0;
  std::size_t idx = rng.below(n);
  while (idx == avoid) idx = rng.below(n);
  return idx;
}

void put(Image& img, int y, int x, const Rgb& c) {
  img.at(y, x, 0) = c.r;
  img.at(y, x, 1) = c.g;
  img.at(y, x, 2) = c.b;
}

}  // namespace

const std::vector<Rgb>& default_palette() {
  // Saturated hues kept inside [0.06, 0.94] so small distortions do not clip.
  static const std::vector<Rgb> kPalette = {
      {0.88, 0.16, 0.16}, {0.92, 0.55, 0.12}, {0.88, 0.84, 0.20},
      {0.18, 0.74, 0.26}, {0.12, 0.68, 0.80}, {0.16, 0.30, 0.84},
      {0.56, 0.20, 0.76}, {0.86, 0.24, 0.60},
  };
  return kPalette;
}

std::vector<Image> make_dataset(const SyntheticSpec& spec) {
  require(spec.count > 0, Status::kInvalidArgument, "dataset: count must be > 0");
  require(spec.image_size >= 4, Status::kInvalidArgument,
          "dataset: image_size too small");
  const std::vector<Rgb>& palette =
      spec.palette.empty() ? default_palette() : spec.palette;
  require(palette.size() >= 1, Status::kInvalidArgument, "dataset: empty palette");

  std::vector<Image> out;
  out.reserve(spec.count);
  const int s = spec.image_size;
  for (int idx = 0; idx < spec.count; ++idx) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(idx)));
    Image img(s, s, 3);

    // Gradient background between two palette colors, horizontal or vertical.
    const std::size_t bg0_idx = rng.below(palette.size());
    const Rgb bg0 = palette[bg0_idx];
    const Rgb bg1 = palette[pick_other(rng, palette.size(), bg0_idx)];
    const bool horizontal = rng.uniform() < 0.5;
    for (int y = 0; y < s; ++y) {
      for (int x = 0; x < s; ++x) {
        const double t = horizontal ? static_cast<double>(x) / (s - 1)
                                    : static_cast<double>(y) / (s - 1);
        put(img, y, x, mix(bg0, bg1, t));
      }
    }

    const ShapeKind kind = static_cast<ShapeKind>(rng.below(3));
    const Rgb fg = palette[pick_other(rng, palette.size(), bg0_idx)];
    switch (kind) {
      case ShapeKind::kDisc: {
        const double cx = rng.uniform(0.25, 0.75) * s;
        const double cy = rng.uniform(0.25, 0.75) * s;
        const double radius = rng.uniform(0.18, 0.35) * s;
        for (int y = 0; y < s; ++y)
          for (int x = 0; x < s; ++x) {
            const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
            if (dx * dx + dy * dy <= radius * radius) put(img, y, x, fg);
          }
        break;
      }
      case ShapeKind::kBar: {
        const bool vertical = rng.uniform() < 0.5;
        const int extent = vertical ? s : s;
        const int thickness = 1 + static_cast<int>(rng.below(std::max(1, s / 4)));
        const int pos = static_cast<int>(rng.below(
            static_cast<std::uint64_t>(std::max(1, extent - thickness))));
        for (int y = 0; y < s; ++y)
          for (int x = 0; x < s; ++x) {
            const int along = vertical ? x : y;
            if (along >= pos && along < pos + thickness) put(img, y, x, fg);
          }
        break;
      }
      case ShapeKind::kGradientFill: {
        // Pure two-color diagonal fill over the background.
        const Rgb other = palette[rng.below(palette.size())];
        for (int y = 0; y < s; ++y)
          for (int x = 0; x < s; ++x) {
            const double t = (x + y) / static_cast<double>(2 * s - 2);
            put(img, y, x, mix(fg, other, t));
          }
        break;
      }
    }
    check_image(img, "dataset image");
    out.push_back(std::move(img));
  }
  return out;
}

}  // namespace iqg
