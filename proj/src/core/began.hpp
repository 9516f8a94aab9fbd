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

#ifndef IQGAN_CORE_BEGAN_HPP_
#define IQGAN_CORE_BEGAN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "core/common.hpp"

namespace iqg {

// Proportional controller state. k stays clamped to [0,1]; lambda_k is
// constant over a run.
struct EquilibriumState {
  double k = 0.0;
  double gamma = 0.5;
  double lambda_k = 1e-3;
  std::uint64_t step = 0;
};

struct LossPair {
  double loss_real = 0.0;  // autoencoder loss of real samples
  double loss_fake = 0.0;  // autoencoder loss of generated samples
};

void check_loss_pair(const LossPair& p);

// loss_real - k * loss_fake
double discriminator_loss(const LossPair& p, const EquilibriumState& s);

// loss_fake, independent of everything else
double generator_loss(const LossPair& p);

// k' = clamp(k + lambda_k * (gamma * loss_real - loss_fake), 0, 1),
// step incremented.
EquilibriumState update_k(const EquilibriumState& s, const LossPair& p);

// loss_real + |gamma * loss_real - loss_fake|
double convergence_measure(const LossPair& p, double gamma);

struct ConvergenceRecord {
  std::uint64_t step = 0;
  double m_raw = 0.0;
  double m_smooth = 0.0;
  double loss_real = 0.0;
  double loss_fake = 0.0;
  double k = 0.0;  // controller value in effect at this step
};

struct LossLogRow {
  std::uint64_t step = 0;
  LossPair pair;
};

// Convergence measure per row plus a Gaussian-smoothed copy; the k column
// replays the controller over the stream from k0 with the given lambda_k.
std::vector<ConvergenceRecord> replay_log(const std::vector<LossLogRow>& rows,
                                          double gamma, double sigma,
                                          double lambda_k = 1e-3,
                                          double k0 = 0.0);

// Loss-log CSV, header `step,loss_real,loss_fake`.
std::string encode_loss_log(const std::vector<LossLogRow>& rows);
std::vector<LossLogRow> decode_loss_log(const std::string& text);
void write_loss_log(const std::string& path, const std::vector<LossLogRow>& rows);
std::vector<LossLogRow> read_loss_log(const std::string& path);

// Replay CSV, header `step,m_raw,m_smooth,k`.
std::string encode_replay_csv(const std::vector<ConvergenceRecord>& records);
void write_replay_csv(const std::string& path,
                      const std::vector<ConvergenceRecord>& records);

}  // namespace iqg

#endif  // IQGAN_CORE_BEGAN_HPP_
