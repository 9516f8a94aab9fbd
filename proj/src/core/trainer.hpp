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

#ifndef IQGAN_CORE_TRAINER_HPP_
#define IQGAN_CORE_TRAINER_HPP_

#include <memory>
#include <string>
#include <vector>

#include "core/began.hpp"
#include "core/dataset.hpp"
#include "core/loss.hpp"
#include "core/metric_graph.hpp"
#include "core/network.hpp"

namespace iqg {

struct TrainerConfig {
  int n_z = 32;  // hidden dim always equals n_z
  int image_size = 16;
  int batch_size = 16;
  double lr = 8e-5;
  double beta1 = 0.5;
  double beta2 = 0.999;
  int lr_decay_interval = 1000;
  double lr_decay_factor = 2.0;
  double lambda_k = 1e-3;
  double k0 = 0.0;
  double gamma = 0.5;
  MetricWeights weights{1, 1, 1};
  GradientFilter filter = GradientFilter::kSobel;
  std::int64_t steps = 2000;
  std::uint64_t seed = 1;
  int dataset_count = 500;
};

void check_trainer_config(const TrainerConfig& cfg);

// `key = value` lines, '#' comments. Unknown keys are rejected.
TrainerConfig read_trainer_config(const std::string& path);
std::string encode_trainer_config(const TrainerConfig& cfg);

struct TrainStepRecord {
  std::uint64_t step = 0;
  double loss_real = 0;
  double loss_fake = 0;
  double k = 0;  // controller value applied at this step
  double m_global = 0;
};

struct AdamMoments {
  Tensor m;
  Tensor v;
};

// Bias-corrected Adam with epsilon 1e-8; t is 1-based.
void adam_update(Tensor& param, const Tensor& grad, AdamMoments& moments,
                 std::int64_t t, double lr, double beta1, double beta2);

struct ForwardBackwardResult {
  LossPair losses;  // L(x), L(G(z))
  // Gradient per bound parameter, keyed by the parameter tensor.
  std::vector<std::pair<Tensor*, Tensor>> disc_grads;
  std::vector<std::pair<Tensor*, Tensor>> gen_grads;
};

// One full differentiation pass: L(x) = d(x, D(x)), L(G(z)) = d(G(z),
// D(G(z))), d(L_D)/d(theta_D) with L_D = L(x) - k L(G(z)), and
// d(L_G)/d(theta_G) with L_G = L(G(z)).
ForwardBackwardResult forward_backward(Generator& gen, Discriminator& disc,
                                       const Tensor& batch_real, const Tensor& z,
                                       const MetricWeights& w,
                                       GradientFilter filter, double k);

class Trainer {
 public:
  explicit Trainer(const TrainerConfig& cfg);

  TrainStepRecord step();

  const TrainerConfig& config() const { return cfg_; }
  std::uint64_t current_step() const { return equilibrium_.step; }
  const EquilibriumState& equilibrium() const { return equilibrium_; }
  const std::vector<TrainStepRecord>& history() const { return history_; }
  const std::vector<Image>& dataset() const { return dataset_; }

  // Inference helpers; all deterministic in their arguments.
  std::vector<double> latent_from_seed(std::uint64_t seed) const;
  Image generate(const std::vector<double>& z);
  std::vector<Image> interpolate(const std::vector<double>& z_a,
                                 const std::vector<double>& z_b, int n);
  Image sample_grid(std::uint64_t seed, int count, int cols);

  void save_checkpoint(const std::string& path) const;
  static std::unique_ptr<Trainer> load_checkpoint(const std::string& path);

  // Test access to the parameter tables.
  std::vector<NamedTensor>& generator_parameters() { return gen_params_; }
  std::vector<NamedTensor>& discriminator_parameters() { return disc_params_; }
  Generator& generator() { return gen_; }
  Discriminator& discriminator() { return disc_; }

 private:
  friend struct CheckpointCodec;

  void init_networks();
  Tensor next_batch();
  Tensor sample_latent(int count);
  void reshuffle();

  TrainerConfig cfg_;
  std::vector<Image> dataset_;
  Generator gen_;
  Discriminator disc_;
  std::vector<NamedTensor> gen_params_;
  std::vector<NamedTensor> disc_params_;
  std::vector<AdamMoments> gen_moments_;
  std::vector<AdamMoments> disc_moments_;
  EquilibriumState equilibrium_;
  Rng z_rng_;
  std::uint64_t epoch_ = 0;
  std::size_t cursor_ = 0;
  std::vector<int> order_;
  std::vector<TrainStepRecord> history_;
};

}  // namespace iqg

#endif  // IQGAN_CORE_TRAINER_HPP_
