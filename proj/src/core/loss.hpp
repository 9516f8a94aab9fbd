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

#ifndef IQGAN_CORE_LOSS_HPP_
#define IQGAN_CORE_LOSS_HPP_

#include <array>
#include <string>
#include <vector>

#include "core/metrics.hpp"

namespace iqg {

struct MetricWeights {
  double l1 = 0;
  double gmsm = 0;
  double chrom = 0;
};

void check_weights(const MetricWeights& w);

// Normalized weighted combination of the three component distances.
double combine_distances(double d_l1, double d_gmsm, double d_chrom,
                         const MetricWeights& w);

// Weighted multidimensional distance in [0,1]. Component branches with zero
// weight are never evaluated; beta_chrom > 0 on grayscale pairs is an error
// rather than a silent renormalization.
double composite_distance(const Image& ref, const Image& dist,
                          const MetricWeights& w,
                          GradientFilter filter = GradientFilter::kSobel);

struct ModelConfig {
  int model_id = 0;
  int image_size = 0;
  double gamma = 0;
  MetricWeights weights;
};

// The 12 built-in model rows.
const std::array<ModelConfig, 12>& builtin_models();

// Comma-separated table with header
// `model_id,image_size,gamma,beta_l1,beta_gmsm,beta_chrom`.
std::string encode_model_table(const std::vector<ModelConfig>& models);
std::vector<ModelConfig> decode_model_table(const std::string& text);
void write_model_table(const std::string& path,
                       const std::vector<ModelConfig>& models);
std::vector<ModelConfig> read_model_table(const std::string& path);

// Per-metric mean and population sigma over a score history.
struct EpochStats {
  MetricScores mean;
  MetricScores sigma;
  std::size_t epochs = 0;
};

EpochStats accumulate_stats(const std::vector<MetricScores>& history);

}  // namespace iqg

#endif  // IQGAN_CORE_LOSS_HPP_
