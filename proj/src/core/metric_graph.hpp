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

#ifndef IQGAN_CORE_METRIC_GRAPH_HPP_
#define IQGAN_CORE_METRIC_GRAPH_HPP_

#include "core/loss.hpp"
#include "core/tape.hpp"

namespace iqg {

// Differentiable counterparts of the metric stack, built from tape
// primitives over (N,H,W,C) batches. Values agree with the plain metric
// functions on the same inputs; the unit tests pin that equivalence.
namespace graph {

using ad::Tape;

Tape::VarId l1_node(Tape& t, Tape::VarId a, Tape::VarId b);

// 1 - mean GMS of the luminance channels, Sobel or Prewitt pair.
Tape::VarId gmsm_distance_node(Tape& t, Tape::VarId a, Tape::VarId b,
                               GradientFilter filter);

// 1 - mean(S_I * S_Q) on the shifted chrominance planes.
Tape::VarId chrom_distance_node(Tape& t, Tape::VarId a, Tape::VarId b);

// Weighted Eq-style combination; zero-weight branches are not built.
Tape::VarId composite_loss_node(Tape& t, Tape::VarId a, Tape::VarId b,
                                const MetricWeights& w, GradientFilter filter);

}  // namespace graph

}  // namespace iqg

#endif  // IQGAN_CORE_METRIC_GRAPH_HPP_
