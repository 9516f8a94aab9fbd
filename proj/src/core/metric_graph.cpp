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

#include "core/metric_graph.hpp"

namespace iqg::graph {

namespace {

Tensor kernel_tensor(const Kernel3& k) {
  Tensor t({3, 3, 1, 1});
  for (int i = 0; i < 9; ++i) t.v[i] = k.k[i];
  return t;
}

// (2ab + C) / (a^2 + b^2 + C), elementwise.
Tape::VarId similarity_node(Tape& t, Tape::VarId a, Tape::VarId b, double c) {
  Tape::VarId num = t.add_scalar(t.scale(t.mul(a, b), 2.0), c);
  Tape::VarId den = t.add_scalar(t.add(t.mul(a, a), t.mul(b, b)), c);
  return t.div(num, den);
}

Tape::VarId luminance_node(Tape& t, Tape::VarId img) {
  return t.channel_slice(t.channel_matrix(img, kYiqMatrix), 0);
}

Tape::VarId gradient_magnitude_node(Tape& t, Tape::VarId plane,
                                    GradientFilter filter) {
  const Kernel3& kx = filter == GradientFilter::kSobel ? sobel_x() : prewitt_x();
  const Kernel3& ky = filter == GradientFilter::kSobel ? sobel_y() : prewitt_y();
  Tape::VarId kxv = t.input(kernel_tensor(kx), "kernel_x");
  Tape::VarId kyv = t.input(kernel_tensor(ky), "kernel_y");
  Tape::VarId gx = t.conv3x3(plane, kxv, Tape::kNoVar, 1, Tape::Pad::kReplicate);
  Tape::VarId gy = t.conv3x3(plane, kyv, Tape::kNoVar, 1, Tape::Pad::kReplicate);
  return t.sqrt_shifted(t.add(t.mul(gx, gx), t.mul(gy, gy)), kGradientEpsilon);
}

Tape::VarId one_minus(Tape& t, Tape::VarId x) {
  return t.add_scalar(t.scale(x, -1.0), 1.0);
}

}  // namespace

Tape::VarId l1_node(Tape& t, Tape::VarId a, Tape::VarId b) {
  return t.mean_all(t.abs(t.sub(a, b)));
}

Tape::VarId gmsm_distance_node(Tape& t, Tape::VarId a, Tape::VarId b,
                               GradientFilter filter) {
  Tape::VarId ma = gradient_magnitude_node(t, luminance_node(t, a), filter);
  Tape::VarId mb = gradient_magnitude_node(t, luminance_node(t, b), filter);
  return one_minus(t, t.mean_all(similarity_node(t, ma, mb, kSimilarityC)));
}

Tape::VarId chrom_distance_node(Tape& t, Tape::VarId a, Tape::VarId b) {
  Tape::VarId ya = t.channel_matrix(a, kYiqMatrix);
  Tape::VarId yb = t.channel_matrix(b, kYiqMatrix);
  Tape::VarId ia = t.add_scalar(t.channel_slice(ya, 1), kIShift);
  Tape::VarId ib = t.add_scalar(t.channel_slice(yb, 1), kIShift);
  Tape::VarId qa = t.add_scalar(t.channel_slice(ya, 2), kQShift);
  Tape::VarId qb = t.add_scalar(t.channel_slice(yb, 2), kQShift);
  Tape::VarId si = similarity_node(t, ia, ib, kSimilarityC);
  Tape::VarId sq = similarity_node(t, qa, qb, kSimilarityC);
  return one_minus(t, t.mean_all(t.mul(si, sq)));
}

Tape::VarId composite_loss_node(Tape& t, Tape::VarId a, Tape::VarId b,
                                const MetricWeights& w, GradientFilter filter) {
  check_weights(w);
  Tape::VarId acc = Tape::kNoVar;
  auto add_term = [&](Tape::VarId term, double beta) {
    Tape::VarId scaled = t.scale(term, beta);
    acc = acc == Tape::kNoVar ? scaled : t.add(acc, scaled);
  };
  if (w.l1 > 0) add_term(l1_node(t, a, b), w.l1);
  if (w.gmsm > 0) add_term(gmsm_distance_node(t, a, b, filter), w.gmsm);
  if (w.chrom > 0) add_term(chrom_distance_node(t, a, b), w.chrom);
  return t.scale(acc, 1.0 / (w.l1 + w.gmsm + w.chrom));
}

}  // namespace iqg::graph
