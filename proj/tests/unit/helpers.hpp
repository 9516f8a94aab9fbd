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

#ifndef IQGAN_TESTS_HELPERS_HPP_
#define IQGAN_TESTS_HELPERS_HPP_

#include <atomic>
#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

#include "core/image.hpp"

namespace testutil {

inline iqg::Image random_image(std::mt19937_64& rng, int w, int h, int c,
                               double lo = 0.0, double hi = 1.0) {
  iqg::Image img(w, h, c);
  std::uniform_real_distribution<double> dist(lo, hi);
  for (double& v : img.data) v = dist(rng);
  return img;
}

// 64x64 color fixture with gradients and shapes; decent variance, values
// kept away from the clip rails so moderate distortions stay in range.
inline iqg::Image gradient_shape_image(int size = 64) {
  iqg::Image img(size, size, 3);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double tx = static_cast<double>(x) / (size - 1);
      const double ty = static_cast<double>(y) / (size - 1);
      img.at(y, x, 0) = 0.12 + 0.7 * tx;
      img.at(y, x, 1) = 0.15 + 0.6 * ty;
      img.at(y, x, 2) = 0.82 - 0.65 * tx * ty;
    }
  }
  // disc
  const double cx = size * 0.35, cy = size * 0.4, r = size * 0.18;
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) {
      const double dx = x - cx, dy = y - cy;
      if (dx * dx + dy * dy < r * r) {
        img.at(y, x, 0) = 0.85;
        img.at(y, x, 1) = 0.2;
        img.at(y, x, 2) = 0.2;
      }
    }
  // bar
  for (int y = size * 2 / 3; y < size * 2 / 3 + size / 10; ++y)
    for (int x = size / 8; x < size * 7 / 8; ++x) {
      img.at(y, x, 0) = 0.1;
      img.at(y, x, 1) = 0.75;
      img.at(y, x, 2) = 0.3;
    }
  return img;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    dir_ = std::filesystem::temp_directory_path() /
           ("iqgan_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

}  // namespace testutil

#endif  // IQGAN_TESTS_HELPERS_HPP_
