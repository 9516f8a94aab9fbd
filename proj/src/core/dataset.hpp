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

#ifndef IQGAN_CORE_DATASET_HPP_
#define IQGAN_CORE_DATASET_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "core/image.hpp"

namespace iqg {

struct Rgb {
  double r, g, b;
};

enum class ShapeKind { kDisc, kBar, kGradientFill };

// Procedural color-image dataset: shapes on gradient backgrounds, giving
// both luminance edges and chrominance variety. Deterministic per spec.
struct SyntheticSpec {
  int count = 500;
  int image_size = 16;
  std::vector<Rgb> palette;  // empty -> default palette
  std::uint64_t seed = 0;
};

const std::vector<Rgb>& default_palette();

std::vector<Image> make_dataset(const SyntheticSpec& spec);

}  // namespace iqg

#endif  // IQGAN_CORE_DATASET_HPP_
