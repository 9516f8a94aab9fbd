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

#ifndef IQGAN_CORE_TAPE_HPP_
#define IQGAN_CORE_TAPE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "core/tensor.hpp"

namespace iqg::ad {

// Reverse-mode autodiff tape. Ops evaluate eagerly and record a backward
// closure; creation order is the topological order, so backward() is a
// single reverse sweep. Every op output is checked finite and throws
// Status::kNumericError naming the op otherwise.
class Tape {
 public:
  using VarId = std::int32_t;
  static constexpr VarId kNoVar = -1;

  enum class Pad { kZero, kReplicate };

  // Leaves. `input` is a constant; `param` participates in gradients the
  // same way but marks intent at call sites.
  VarId input(Tensor value, const char* name = "input");
  VarId param(const Tensor& value, const char* name = "param");

  const Tensor& value(VarId id) const { return nodes_[id].value; }
  const Tensor& grad(VarId id) const { return nodes_[id].grad; }
  std::size_t size() const { return nodes_.size(); }

  // Elementwise, same shapes.
  VarId add(VarId a, VarId b);
  VarId sub(VarId a, VarId b);
  VarId mul(VarId a, VarId b);
  VarId div(VarId a, VarId b);

  // Elementwise with scalar constants.
  VarId scale(VarId a, double s);
  VarId add_scalar(VarId a, double s);

  VarId abs(VarId a);                      // subgradient 0 at the kink
  VarId sqrt_shifted(VarId a, double eps); // sqrt(x + eps)
  VarId elu(VarId a);                      // alpha = 1
  VarId logistic(VarId a);

  VarId mean_all(VarId a);  // -> shape {1}

  VarId reshape(VarId a, std::vector<int> shape);

  // x: (N, Fin), w: (Fin, Fout), b: (Fout) -> (N, Fout)
  VarId dense(VarId x, VarId w, VarId b);

  // x: (N,H,W,Ci), k: (3,3,Ci,Co), optional b: (Co), stride 1 or 2.
  // Output (N, ceil(H/stride), ceil(W/stride), Co); taps stay centered on
  // the strided grid.
  VarId conv3x3(VarId x, VarId k, VarId b, int stride, Pad pad);

  // Nearest-neighbour 2x upsampling of (N,H,W,C).
  VarId upsample2(VarId a);

  // Per-pixel channel mix: out_c = sum_c' m[c][c'] * in_c'. x: (N,H,W,3).
  VarId channel_matrix(VarId a, const double m[3][3]);

  // Single channel as (N,H,W,1).
  VarId channel_slice(VarId a, int channel);

  // Zeroes all gradients, seeds d(root)/d(root) = 1 and sweeps the tape in
  // reverse; untouched subgraphs are skipped.
  void backward(VarId root);

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool reached = false;
    const char* name;
    std::function<void(Tape&)> back;  // empty for leaves
  };

  VarId emplace(Tensor value, const char* name, std::function<void(Tape&)> back);
  Tensor& grad_of(VarId id);  // allocates on first touch, marks reached
  void check_id(VarId id) const;

  std::vector<Node> nodes_;
};

}  // namespace iqg::ad

#endif  // IQGAN_CORE_TAPE_HPP_
