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

#include <doctest.h>

#include <random>

#include "core/network.hpp"

using namespace iqg;

namespace {

std::int64_t count_params(std::vector<NamedTensor>& params) {
  std::int64_t n = 0;
  for (auto& p : params) n += static_cast<std::int64_t>(p.tensor->numel());
  return n;
}

Tensor uniform_latent(std::mt19937_64& rng, int n, int dim) {
  Tensor z({n, dim});
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : z.v) v = dist(rng);
  return z;
}

}  // namespace

TEST_CASE("network construction is deterministic in the seed") {
  Rng r1(1234), r2(1234), r3(999);
  Generator a = make_generator(16, 32, r1);
  Generator b = make_generator(16, 32, r2);
  Generator c = make_generator(16, 32, r3);

  std::vector<NamedTensor> pa, pb, pc;
  a.collect(pa);
  b.collect(pb);
  c.collect(pc);
  REQUIRE(pa.size() == pb.size());
  bool all_equal = true, any_diff_c = false;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].name == pb[i].name);
    all_equal = all_equal && pa[i].tensor->v == pb[i].tensor->v;
    any_diff_c = any_diff_c || pa[i].tensor->v != pc[i].tensor->v;
  }
  CHECK(all_equal);
  CHECK(any_diff_c);
}

TEST_CASE("generator output shape and range") {
  Rng rng(5);
  Generator gen = make_generator(16, 32, rng);
  std::mt19937_64 zr(77);
  const Tensor z = uniform_latent(zr, 3, 32);

  ad::Tape tape;
  Bindings bind;
  const auto out = gen.forward(tape, tape.input(z), bind);
  const Tensor& img = tape.value(out);
  CHECK(img.shape == std::vector<int>{3, 16, 16, 3});
  for (double v : img.v) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);  // logistic output is strictly inside (0,1)
  }
}

TEST_CASE("discriminator reproduces shape through the autoencoder") {
  Rng rng(6);
  Discriminator disc = make_discriminator(16, 32, rng);
  std::mt19937_64 zr(78);
  Tensor img({2, 16, 16, 3});
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (double& v : img.v) v = dist(zr);

  ad::Tape tape;
  Bindings bind;
  const auto out = disc.forward(tape, tape.input(img), bind);
  CHECK(tape.value(out).shape == std::vector<int>{2, 16, 16, 3});
}

TEST_CASE("parameter counts match the closed form") {
  Rng rng(7);
  Generator gen = make_generator(16, 32, rng);
  Discriminator disc = make_discriminator(16, 32, rng);
  std::vector<NamedTensor> gp, dp;
  gen.collect(gp);
  disc.collect(dp);

  CHECK(count_params(gp) == decoder_parameter_count(16, 32));
  CHECK(count_params(dp) ==
        encoder_parameter_count(16, 32) + decoder_parameter_count(16, 32));

  // Closed form spelled out for the 16px/32-latent case: the dense layer
  // maps 32 -> 4*4*8 = 128, four 8->8 convs, one 8->3 output conv.
  const std::int64_t dec = (32 * 128 + 128) + 4 * (9 * 8 * 8 + 8) + (9 * 8 * 3 + 3);
  CHECK(decoder_parameter_count(16, 32) == dec);
  const std::int64_t enc = (9 * 3 * 8 + 8) + (9 * 8 * 8 + 8) + (9 * 8 * 16 + 16) +
                           (9 * 16 * 16 + 16) + (9 * 16 * 24 + 24) +
                           (9 * 24 * 24 + 24) + (4 * 4 * 24 * 32 + 32);
  CHECK(encoder_parameter_count(16, 32) == enc);
}

TEST_CASE("bindings reuse one leaf per tensor across two applications") {
  Rng rng(8);
  Discriminator disc = make_discriminator(8, 4, rng);
  std::mt19937_64 zr(79);
  Tensor img({1, 8, 8, 3});
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (double& v : img.v) v = dist(zr);

  ad::Tape tape;
  Bindings bind;
  const auto o1 = disc.forward(tape, tape.input(img), bind);
  const std::size_t after_first = bind.entries().size();
  const auto o2 = disc.forward(tape, o1, bind);
  CHECK(bind.entries().size() == after_first);
  CHECK(tape.value(o2).shape == std::vector<int>{1, 8, 8, 3});
}

TEST_CASE("rejects bad geometry") {
  Rng rng(9);
  CHECK_THROWS_AS(make_generator(10, 8, rng), Error);  // not a multiple of 4
  CHECK_THROWS_AS(make_generator(4, 8, rng), Error);   // below minimum
  CHECK_THROWS_AS(make_discriminator(16, 0, rng), Error);
}
