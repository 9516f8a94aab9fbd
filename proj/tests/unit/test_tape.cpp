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

#include <cmath>
#include <functional>
#include <random>

#include "core/metric_graph.hpp"
#include "core/metrics.hpp"
#include "helpers.hpp"

using namespace iqg;
using ad::Tape;

namespace {

Tensor random_tensor(std::mt19937_64& rng, std::vector<int> shape, double lo,
                     double hi) {
  Tensor t(std::move(shape));
  std::uniform_real_distribution<double> dist(lo, hi);
  for (double& v : t.v) v = dist(rng);
  return t;
}

// Central-difference check of d(scalar)/d(leaf) for one leaf tensor. The
// builder must construct the whole graph from the given leaf values.
using GraphBuilder = std::function<Tape::VarId(Tape&, const std::vector<Tensor>&)>;

void check_gradients(const GraphBuilder& build, std::vector<Tensor> leaves,
                     int check_leaf, double h = 1e-6, double tol = 1e-6) {
  Tape tape;
  const Tape::VarId root = build(tape, leaves);
  tape.backward(root);

  // Leaf ids are created first, in order, by the builder convention below.
  const Tensor analytic = tape.grad(static_cast<Tape::VarId>(check_leaf));

  Tensor& target = leaves[check_leaf];
  for (std::size_t i = 0; i < target.numel(); ++i) {
    const double keep = target.v[i];
    target.v[i] = keep + h;
    Tape tp;
    const double up = tp.value(build(tp, leaves)).v[0];
    target.v[i] = keep - h;
    Tape tm;
    const double down = tm.value(build(tm, leaves)).v[0];
    target.v[i] = keep;
    const double fd = (up - down) / (2 * h);
    const double got = analytic.v[i];
    const double denom = std::max({std::abs(fd), std::abs(got), 1e-8});
    CAPTURE(i);
    CHECK(std::abs(fd - got) / denom < tol);
  }
}

}  // namespace

TEST_CASE("tape values of elementwise ops") {
  Tape t;
  Tensor a({2, 2});
  a.v = {1.0, -2.0, 0.5, 0.0};
  Tensor b({2, 2});
  b.v = {2.0, 3.0, -1.0, 4.0};
  const auto va = t.input(a), vb = t.input(b);
  CHECK(t.value(t.add(va, vb)).v == std::vector<double>{3.0, 1.0, -0.5, 4.0});
  CHECK(t.value(t.sub(va, vb)).v == std::vector<double>{-1.0, -5.0, 1.5, -4.0});
  CHECK(t.value(t.mul(va, vb)).v == std::vector<double>{2.0, -6.0, -0.5, 0.0});
  CHECK(t.value(t.abs(va)).v == std::vector<double>{1.0, 2.0, 0.5, 0.0});
  CHECK(t.value(t.scale(va, -2.0)).v == std::vector<double>{-2.0, 4.0, -1.0, 0.0});
  CHECK(t.value(t.mean_all(va)).v[0] == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(t.value(t.elu(va)).v[1] == doctest::Approx(std::expm1(-2.0)).epsilon(1e-12));
  CHECK(t.value(t.elu(va)).v[0] == 1.0);
  CHECK(t.value(t.logistic(t.input(Tensor({1}, 0.0)))).v[0] == 0.5);
}

TEST_CASE("tape rejects shape mismatches and non-finite values") {
  Tape t;
  const auto a = t.input(Tensor({2, 2}, 1.0));
  const auto b = t.input(Tensor({2, 3}, 1.0));
  CHECK_THROWS_AS(t.add(a, b), Error);

  Tensor inf({1});
  inf.v[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(t.input(inf), Error);

  // Division producing inf is caught and names the op.
  const auto num = t.input(Tensor({1}, 1.0));
  const auto den = t.input(Tensor({1}, 0.0));
  try {
    t.div(num, den);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("div") != std::string::npos);
    CHECK(e.status() == Status::kNumericError);
  }
}

TEST_CASE("finite differences: elementwise chain") {
  std::mt19937_64 rng(101);
  // f = mean(abs(a*b + elu(a) - logistic(b) / sqrt(a*a + 0.5)))
  const GraphBuilder build = [](Tape& t, const std::vector<Tensor>& leaves) {
    const auto a = t.param(leaves[0]);
    const auto b = t.param(leaves[1]);
    const auto prod = t.mul(a, b);
    const auto e = t.elu(a);
    const auto s = t.logistic(b);
    const auto den = t.sqrt_shifted(t.mul(a, a), 0.5);
    const auto expr = t.sub(t.add(prod, e), t.div(s, den));
    return t.mean_all(t.abs(expr));
  };
  std::vector<Tensor> leaves = {random_tensor(rng, {3, 4}, -1.5, 1.5),
                                random_tensor(rng, {3, 4}, -1.5, 1.5)};
  check_gradients(build, leaves, 0);
  check_gradients(build, leaves, 1);
}

TEST_CASE("finite differences: dense") {
  std::mt19937_64 rng(103);
  const GraphBuilder build = [](Tape& t, const std::vector<Tensor>& leaves) {
    const auto x = t.param(leaves[0]);
    const auto w = t.param(leaves[1]);
    const auto b = t.param(leaves[2]);
    const auto y = t.dense(x, w, b);
    return t.mean_all(t.mul(y, y));
  };
  std::vector<Tensor> leaves = {random_tensor(rng, {3, 5}, -1, 1),
                                random_tensor(rng, {5, 4}, -1, 1),
                                random_tensor(rng, {4}, -1, 1)};
  for (int leaf : {0, 1, 2}) check_gradients(build, leaves, leaf);
}

TEST_CASE("finite differences: conv3x3 all modes") {
  std::mt19937_64 rng(107);
  for (const int stride : {1, 2}) {
    for (const auto pad : {Tape::Pad::kZero, Tape::Pad::kReplicate}) {
      CAPTURE(stride);
      const GraphBuilder build = [stride, pad](Tape& t,
                                               const std::vector<Tensor>& leaves) {
        const auto x = t.param(leaves[0]);
        const auto k = t.param(leaves[1]);
        const auto b = t.param(leaves[2]);
        const auto y = t.conv3x3(x, k, b, stride, pad);
        return t.mean_all(t.mul(y, y));
      };
      std::vector<Tensor> leaves = {random_tensor(rng, {2, 5, 6, 3}, -1, 1),
                                    random_tensor(rng, {3, 3, 3, 2}, -1, 1),
                                    random_tensor(rng, {2}, -0.5, 0.5)};
      for (int leaf : {0, 1, 2}) check_gradients(build, leaves, leaf);
    }
  }
}

TEST_CASE("conv3x3 stride-2 shape and bias-free variant") {
  Tape t;
  const auto x = t.input(Tensor({1, 5, 5, 1}, 1.0));
  Tensor k({3, 3, 1, 1});
  k.v = {0, 0, 0, 0, 1, 0, 0, 0, 0};  // identity tap
  const auto y = t.conv3x3(x, t.input(k), Tape::kNoVar, 2, Tape::Pad::kZero);
  CHECK(t.value(y).shape == std::vector<int>{1, 3, 3, 1});
  for (double v : t.value(y).v) CHECK(v == 1.0);
}

TEST_CASE("finite differences: upsample2, reshape, channel ops") {
  std::mt19937_64 rng(109);
  const GraphBuilder build = [](Tape& t, const std::vector<Tensor>& leaves) {
    const auto x = t.param(leaves[0]);
    auto h = t.upsample2(x);
    h = t.channel_matrix(h, kYiqMatrix);
    const auto y0 = t.channel_slice(h, 0);
    const auto y2 = t.channel_slice(h, 2);
    const auto mixed = t.add(t.mul(y0, y0), t.abs(y2));
    return t.mean_all(t.reshape(mixed, {4 * 6 * 4}));
  };
  std::vector<Tensor> leaves = {random_tensor(rng, {4, 3, 2, 3}, -1, 1)};
  check_gradients(build, leaves, 0);
}

TEST_CASE("upsample2 nearest-neighbour values") {
  Tape t;
  Tensor x({1, 2, 2, 1});
  x.v = {1, 2, 3, 4};
  const auto y = t.upsample2(t.input(x));
  CHECK(t.value(y).shape == std::vector<int>{1, 4, 4, 1});
  CHECK(t.value(y).v == std::vector<double>{1, 1, 2, 2, 1, 1, 2, 2, 3, 3, 4, 4,
                                            3, 3, 4, 4});
}

TEST_CASE("two-parameter micro net matches hand-computed gradient") {
  // f(w, b) = mean over samples of |w*x + b - y|; subgradients are the
  // signed means, derived by hand.
  Tensor xs({4, 1});
  xs.v = {0.0, 1.0, 2.0, 3.0};
  Tensor ys({4, 1});
  ys.v = {0.1, 0.9, 2.2, 2.7};
  const double w0 = 0.8, b0 = 0.05;

  Tape t;
  const auto w = t.param(Tensor({1, 1}, w0));
  const auto b = t.param(Tensor({1}, b0));
  const auto pred = t.dense(t.input(xs), w, b);
  const auto loss = t.mean_all(t.abs(t.sub(pred, t.input(ys))));
  t.backward(loss);

  double dw = 0, db = 0;
  for (int i = 0; i < 4; ++i) {
    const double r = w0 * xs.v[i] + b0 - ys.v[i];
    const double s = r > 0 ? 1.0 : (r < 0 ? -1.0 : 0.0);
    dw += s * xs.v[i] / 4.0;
    db += s / 4.0;
  }
  CHECK(t.grad(w).v[0] == doctest::Approx(dw).epsilon(1e-12));
  CHECK(t.grad(b).v[0] == doctest::Approx(db).epsilon(1e-12));
}

TEST_CASE("backward can run twice with different roots") {
  Tape t;
  const auto a = t.param(Tensor({1}, 2.0));
  const auto b = t.param(Tensor({1}, 3.0));
  const auto prod = t.mul(a, b);       // d/da = 3, d/db = 2
  const auto sum = t.add(prod, a);     // d/da = 4, d/db = 2
  t.backward(sum);
  CHECK(t.grad(a).v[0] == 4.0);
  CHECK(t.grad(b).v[0] == 2.0);
  t.backward(prod);
  CHECK(t.grad(a).v[0] == 3.0);
  CHECK(t.grad(b).v[0] == 2.0);
}

TEST_CASE("metric graph agrees with the metric functions") {
  std::mt19937_64 rng(113);
  const Image ra = testutil::random_image(rng, 10, 8, 3);
  const Image rb = testutil::random_image(rng, 10, 8, 3);
  const Image rc = testutil::random_image(rng, 10, 8, 3);
  const Image rd = testutil::random_image(rng, 10, 8, 3);

  auto to_batch = [](const Image& x, const Image& y) {
    Tensor t({2, x.height, x.width, 3});
    std::copy(x.data.begin(), x.data.end(), t.v.begin());
    std::copy(y.data.begin(), y.data.end(), t.v.begin() + x.data.size());
    return t;
  };
  const Tensor batch_a = to_batch(ra, rc);
  const Tensor batch_b = to_batch(rb, rd);

  for (GradientFilter f : {GradientFilter::kSobel, GradientFilter::kPrewitt}) {
    for (const MetricWeights w :
         {MetricWeights{1, 0, 0}, MetricWeights{0, 1, 0}, MetricWeights{0, 0, 1},
          MetricWeights{1, 1, 1}, MetricWeights{2, 1, 0.5}}) {
      Tape t;
      const auto a = t.input(batch_a);
      const auto b = t.input(batch_b);
      const double got = t.value(graph::composite_loss_node(t, a, b, w, f)).v[0];
      const double want = 0.5 * (composite_distance(ra, rb, w, f) +
                                 composite_distance(rc, rd, w, f));
      CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("finite differences through the full composite loss") {
  std::mt19937_64 rng(127);
  const MetricWeights w{1, 1, 1};
  const GraphBuilder build = [&w](Tape& t, const std::vector<Tensor>& leaves) {
    const auto a = t.param(leaves[0]);
    const auto b = t.param(leaves[1]);
    return graph::composite_loss_node(t, a, b, w, GradientFilter::kSobel);
  };
  std::vector<Tensor> leaves = {random_tensor(rng, {1, 6, 6, 3}, 0.05, 0.95),
                                random_tensor(rng, {1, 6, 6, 3}, 0.05, 0.95)};
  check_gradients(build, leaves, 0, 1e-6, 1e-5);
  check_gradients(build, leaves, 1, 1e-6, 1e-5);
}
