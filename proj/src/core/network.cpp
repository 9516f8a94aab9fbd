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

#include "core/network.hpp"

#include <cmath>

namespace iqg {

namespace {

using VarId = ad::Tape::VarId;

void glorot_fill(Tensor& t, int fan_in, int fan_out, Rng& rng) {
  const double bound = std::sqrt(6.0 / (fan_in + fan_out));
  for (double& v : t.v) v = rng.uniform(-bound, bound);
}

DenseLayer make_dense(int fin, int fout, Rng& rng) {
  DenseLayer l{Tensor({fin, fout}), Tensor({fout})};
  glorot_fill(l.w, fin, fout, rng);
  return l;
}

ConvLayer make_conv(int ci, int co, int stride, Rng& rng) {
  ConvLayer l{Tensor({3, 3, ci, co}), Tensor({co}), stride};
  glorot_fill(l.k, 9 * ci, 9 * co, rng);
  return l;
}

void check_size(int image_size) {
  require(image_size >= 8 && image_size % 4 == 0, Status::kInvalidArgument,
          "image_size must be a multiple of 4, at least 8");
}

}  // namespace

VarId Bindings::bind(ad::Tape& tape, Tensor* t, const char* name) {
  for (const auto& [ptr, id] : entries_) {
    if (ptr == t) return id;
  }
  const VarId id = tape.param(*t, name);
  entries_.emplace_back(t, id);
  return id;
}

VarId DecoderNet::forward(ad::Tape& tape, VarId z, Bindings& bind) {
  VarId h = tape.dense(z, bind.bind(tape, &fc.w, "fc.w"),
                       bind.bind(tape, &fc.b, "fc.b"));
  const int n = tape.value(z).dim(0);
  h = tape.reshape(h, {n, start_hw, start_hw, kBaseChannels});
  std::size_t ci = 0;
  for (int stage = 0; stage < 2; ++stage) {
    h = tape.upsample2(h);
    for (int rep = 0; rep < 2; ++rep, ++ci) {
      h = tape.elu(tape.conv3x3(h, bind.bind(tape, &convs[ci].k, "conv.k"),
                                bind.bind(tape, &convs[ci].b, "conv.b"),
                                convs[ci].stride, ad::Tape::Pad::kZero));
    }
  }
  h = tape.conv3x3(h, bind.bind(tape, &output_conv.k, "out.k"),
                   bind.bind(tape, &output_conv.b, "out.b"), 1,
                   ad::Tape::Pad::kZero);
  return tape.logistic(h);
}

void DecoderNet::collect(std::vector<NamedTensor>& out, const std::string& prefix) {
  out.push_back({prefix + ".fc.w", &fc.w});
  out.push_back({prefix + ".fc.b", &fc.b});
  for (std::size_t i = 0; i < convs.size(); ++i) {
    out.push_back({prefix + ".conv" + std::to_string(i) + ".k", &convs[i].k});
    out.push_back({prefix + ".conv" + std::to_string(i) + ".b", &convs[i].b});
  }
  out.push_back({prefix + ".out.k", &output_conv.k});
  out.push_back({prefix + ".out.b", &output_conv.b});
}

VarId EncoderNet::forward(ad::Tape& tape, VarId img, Bindings& bind) {
  VarId h = img;
  for (std::size_t i = 0; i < convs.size(); ++i) {
    h = tape.elu(tape.conv3x3(h, bind.bind(tape, &convs[i].k, "conv.k"),
                              bind.bind(tape, &convs[i].b, "conv.b"),
                              convs[i].stride, ad::Tape::Pad::kZero));
  }
  const Tensor& hv = tape.value(h);
  const int n = hv.dim(0);
  const int flat = hv.dim(1) * hv.dim(2) * hv.dim(3);
  h = tape.reshape(h, {n, flat});
  return tape.dense(h, bind.bind(tape, &fc.w, "fc.w"),
                    bind.bind(tape, &fc.b, "fc.b"));
}

void EncoderNet::collect(std::vector<NamedTensor>& out, const std::string& prefix) {
  for (std::size_t i = 0; i < convs.size(); ++i) {
    out.push_back({prefix + ".conv" + std::to_string(i) + ".k", &convs[i].k});
    out.push_back({prefix + ".conv" + std::to_string(i) + ".b", &convs[i].b});
  }
  out.push_back({prefix + ".fc.w", &fc.w});
  out.push_back({prefix + ".fc.b", &fc.b});
}

VarId Discriminator::forward(ad::Tape& tape, VarId img, Bindings& bind) {
  VarId h = encoder.forward(tape, img, bind);
  return decoder.forward(tape, h, bind);
}

void Discriminator::collect(std::vector<NamedTensor>& out) {
  encoder.collect(out, "disc.enc");
  decoder.collect(out, "disc.dec");
}

VarId Generator::forward(ad::Tape& tape, VarId z, Bindings& bind) {
  return net.forward(tape, z, bind);
}

void Generator::collect(std::vector<NamedTensor>& out) { net.collect(out, "gen"); }

namespace {

DecoderNet make_decoder(int image_size, int input_dim, Rng& rng) {
  check_size(image_size);
  require(input_dim > 0, Status::kInvalidArgument, "input_dim must be positive");
  DecoderNet d;
  d.input_dim = input_dim;
  d.image_size = image_size;
  d.start_hw = image_size / 4;
  d.fc = make_dense(input_dim, d.start_hw * d.start_hw * kBaseChannels, rng);
  for (int i = 0; i < 4; ++i)
    d.convs.push_back(make_conv(kBaseChannels, kBaseChannels, 1, rng));
  d.output_conv = make_conv(kBaseChannels, 3, 1, rng);
  return d;
}

}  // namespace

Generator make_generator(int image_size, int latent_dim, Rng& rng) {
  return Generator{make_decoder(image_size, latent_dim, rng)};
}

Discriminator make_discriminator(int image_size, int hidden_dim, Rng& rng) {
  check_size(image_size);
  require(hidden_dim > 0, Status::kInvalidArgument, "hidden_dim must be positive");
  Discriminator d;
  EncoderNet& e = d.encoder;
  e.hidden_dim = hidden_dim;
  e.image_size = image_size;
  const int b1 = kBaseChannels, b2 = 2 * kBaseChannels, b3 = 3 * kBaseChannels;
  e.convs.push_back(make_conv(3, b1, 1, rng));
  e.convs.push_back(make_conv(b1, b1, 1, rng));
  e.convs.push_back(make_conv(b1, b2, 2, rng));
  e.convs.push_back(make_conv(b2, b2, 1, rng));
  e.convs.push_back(make_conv(b2, b3, 2, rng));
  e.convs.push_back(make_conv(b3, b3, 1, rng));
  const int start = image_size / 4;
  e.fc = make_dense(start * start * b3, hidden_dim, rng);
  d.decoder = make_decoder(image_size, hidden_dim, rng);
  return d;
}

std::int64_t decoder_parameter_count(int image_size, int input_dim) {
  const int start = image_size / 4;
  const std::int64_t b = kBaseChannels;
  std::int64_t total = static_cast<std::int64_t>(input_dim) * start * start * b +
                       start * start * b;       // fc
  total += 4 * (9 * b * b + b);                 // stage convs
  total += 9 * b * 3 + 3;                       // output conv
  return total;
}

std::int64_t encoder_parameter_count(int image_size, int hidden_dim) {
  const int start = image_size / 4;
  const std::int64_t b1 = kBaseChannels, b2 = 2 * kBaseChannels,
                     b3 = 3 * kBaseChannels;
  std::int64_t total = 9 * 3 * b1 + b1;
  total += 9 * b1 * b1 + b1;
  total += 9 * b1 * b2 + b2;
  total += 9 * b2 * b2 + b2;
  total += 9 * b2 * b3 + b3;
  total += 9 * b3 * b3 + b3;
  total += static_cast<std::int64_t>(start) * start * b3 * hidden_dim + hidden_dim;
  return total;
}

}  // namespace iqg
