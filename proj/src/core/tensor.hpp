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

#ifndef IQGAN_CORE_TENSOR_HPP_
#define IQGAN_CORE_TENSOR_HPP_

#include <cstdint>
#include <numeric>
#include <vector>

#include "core/common.hpp"

namespace iqg {

// Dense row-major tensor of doubles. Image batches use NHWC layout.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> v;

  Tensor() = default;
  explicit Tensor(std::vector<int> s, double fill = 0.0)
      : shape(std::move(s)), v(numel_of(shape), fill) {}

  static std::size_t numel_of(const std::vector<int>& s) {
    std::size_t n = 1;
    for (int d : s) {
      require(d > 0, Status::kInvalidArgument, "tensor: nonpositive dimension");
      n *= static_cast<std::size_t>(d);
    }
    return n;
  }

  std::size_t numel() const { return v.size(); }
  int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }
  int rank() const { return static_cast<int>(shape.size()); }

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }

  // NHWC addressing for rank-4 tensors.
  std::size_t at4(int n, int y, int x, int c) const {
    return ((static_cast<std::size_t>(n) * shape[1] + y) * shape[2] + x) *
               shape[3] +
           c;
  }
};

bool all_finite(const Tensor& t);

}  // namespace iqg

#endif  // IQGAN_CORE_TENSOR_HPP_
