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

#ifndef IQGAN_CORE_NETWORK_HPP_
#define IQGAN_CORE_NETWORK_HPP_

#include <string>
#include <vector>

#include "core/tape.hpp"

namespace iqg {

// Desk-scale convolutional stacks. The decoder (also the generator) maps a
// latent vector to an image through two nearest-neighbour upsampling stages,
// each followed by two 3x3 ELU convolutions, then a 3-channel convolution
// squashed to [0,1]. The encoder mirrors it with stride-2 downsampling and a
// linear dense layer to the hidden state. Hidden conv widths grow 1x, 2x, 3x
// of `kBaseChannels` as resolution halves.
inline constexpr int kBaseChannels = 8;

struct NamedTensor {
  std::string name;
  Tensor* tensor;
};

struct DenseLayer {
  Tensor w;  // (Fin, Fout)
  Tensor b;  // (Fout)
};

struct ConvLayer {
  Tensor k;  // (3,3,Ci,Co)
  Tensor b;  // (Co)
  int stride = 1;
};

// Caches the tape leaf ids of parameter tensors so a network applied twice
// in one step accumulates gradients into a single leaf per parameter.
class Bindings {
 public:
  ad::Tape::VarId bind(ad::Tape& tape, Tensor* t, const char* name);
  const std::vector<std::pair<Tensor*, ad::Tape::VarId>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<Tensor*, ad::Tape::VarId>> entries_;
};

// Latent/hidden vector -> (N, image_size, image_size, 3).
struct DecoderNet {
  int input_dim = 0;
  int image_size = 0;
  int start_hw = 0;  // image_size / 4
  DenseLayer fc;     // input_dim -> start_hw^2 * kBaseChannels, linear
  std::vector<ConvLayer> convs;  // two per upsampling stage
  ConvLayer output_conv;         // kBaseChannels -> 3, logistic

  ad::Tape::VarId forward(ad::Tape& tape, ad::Tape::VarId z, Bindings& bind);
  void collect(std::vector<NamedTensor>& out, const std::string& prefix);
};

// (N, image_size, image_size, 3) -> hidden vector (N, hidden_dim).
struct EncoderNet {
  int hidden_dim = 0;
  int image_size = 0;
  std::vector<ConvLayer> convs;
  DenseLayer fc;  // flattened features -> hidden_dim, linear

  ad::Tape::VarId forward(ad::Tape& tape, ad::Tape::VarId img, Bindings& bind);
  void collect(std::vector<NamedTensor>& out, const std::string& prefix);
};

struct Discriminator {
  EncoderNet encoder;
  DecoderNet decoder;

  ad::Tape::VarId forward(ad::Tape& tape, ad::Tape::VarId img, Bindings& bind);
  void collect(std::vector<NamedTensor>& out);
};

struct Generator {
  DecoderNet net;

  ad::Tape::VarId forward(ad::Tape& tape, ad::Tape::VarId z, Bindings& bind);
  void collect(std::vector<NamedTensor>& out);
};

// image_size must be a multiple of 4, at least 8. Initialization is uniform
// in +-sqrt(6 / (fan_in + fan_out)), biases zero, deterministic in rng.
Generator make_generator(int image_size, int latent_dim, Rng& rng);
Discriminator make_discriminator(int image_size, int hidden_dim, Rng& rng);

// Closed-form parameter count of the stacks above.
std::int64_t decoder_parameter_count(int image_size, int input_dim);
std::int64_t encoder_parameter_count(int image_size, int hidden_dim);

}  // namespace iqg

#endif  // IQGAN_CORE_NETWORK_HPP_
