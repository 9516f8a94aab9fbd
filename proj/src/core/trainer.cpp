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

#include "core/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace iqg {

namespace {

constexpr std::uint64_t kDatasetStream = 11;
constexpr std::uint64_t kInitStream = 23;
constexpr std::uint64_t kLatentStream = 37;
constexpr double kAdamEpsilon = 1e-8;

Tensor images_to_tensor(const std::vector<Image>& images,
                        const std::vector<int>& indices) {
  const Image& first = images[indices[0]];
  Tensor t({static_cast<int>(indices.size()), first.height, first.width,
            first.channels});
  std::size_t off = 0;
  for (int idx : indices) {
    const Image& img = images[idx];
    std::copy(img.data.begin(), img.data.end(), t.v.begin() + off);
    off += img.data.size();
  }
  return t;
}

Image tensor_slice_to_image(const Tensor& t, int n) {
  Image img(t.dim(2), t.dim(1), t.dim(3));
  const std::size_t sz = img.data.size();
  std::copy(t.v.begin() + n * sz, t.v.begin() + (n + 1) * sz, img.data.begin());
  for (double& v : img.data) v = std::min(1.0, std::max(0.0, v));
  return img;
}

}  // namespace

void check_trainer_config(const TrainerConfig& cfg) {
  require(cfg.n_z > 0, Status::kInvalidArgument, "config: n_z must be > 0");
  require(cfg.image_size >= 8 && cfg.image_size % 4 == 0,
          Status::kInvalidArgument,
          "config: image_size must be a multiple of 4, at least 8");
  require(cfg.batch_size > 0, Status::kInvalidArgument,
          "config: batch_size must be > 0");
  require(cfg.lr > 0 && std::isfinite(cfg.lr), Status::kInvalidArgument,
          "config: lr must be positive");
  require(cfg.beta1 >= 0 && cfg.beta1 < 1, Status::kInvalidArgument,
          "config: beta1 in [0,1)");
  require(cfg.beta2 >= 0 && cfg.beta2 < 1, Status::kInvalidArgument,
          "config: beta2 in [0,1)");
  require(cfg.lr_decay_interval > 0, Status::kInvalidArgument,
          "config: lr_decay_interval must be > 0");
  require(cfg.lr_decay_factor >= 1, Status::kInvalidArgument,
          "config: lr_decay_factor must be >= 1");
  require(cfg.lambda_k > 0, Status::kInvalidArgument,
          "config: lambda_k must be > 0");
  require(cfg.k0 >= 0 && cfg.k0 <= 1, Status::kInvalidArgument,
          "config: k0 in [0,1]");
  require(cfg.gamma >= 0 && cfg.gamma <= 1, Status::kInvalidArgument,
          "config: gamma in [0,1]");
  check_weights(cfg.weights);
  require(cfg.steps >= 0, Status::kInvalidArgument, "config: steps must be >= 0");
  require(cfg.dataset_count >= cfg.batch_size, Status::kInvalidArgument,
          "config: dataset_count must be >= batch_size");
}

void adam_update(Tensor& param, const Tensor& grad, AdamMoments& moments,
                 std::int64_t t, double lr, double beta1, double beta2) {
  require(param.same_shape(grad), Status::kInvalidArgument,
          "adam_update: gradient shape mismatch");
  if (moments.m.v.empty()) {
    moments.m = Tensor(param.shape);
    moments.v = Tensor(param.shape);
  }
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < param.numel(); ++i) {
    const double g = grad.v[i];
    moments.m.v[i] = beta1 * moments.m.v[i] + (1.0 - beta1) * g;
    moments.v.v[i] = beta2 * moments.v.v[i] + (1.0 - beta2) * g * g;
    const double mhat = moments.m.v[i] / c1;
    const double vhat = moments.v.v[i] / c2;
    param.v[i] -= lr * mhat / (std::sqrt(vhat) + kAdamEpsilon);
  }
  if (!all_finite(param))
    fail(Status::kNumericError, "adam_update: non-finite parameter");
}

ForwardBackwardResult forward_backward(Generator& gen, Discriminator& disc,
                                       const Tensor& batch_real, const Tensor& z,
                                       const MetricWeights& w,
                                       GradientFilter filter, double k) {
  require(batch_real.rank() == 4 && batch_real.dim(3) == 3,
          Status::kInvalidArgument, "forward_backward: batch must be (N,H,W,3)");
  require(z.rank() == 2, Status::kInvalidArgument,
          "forward_backward: z must be (N,n_z)");

  ad::Tape tape;
  Bindings bind_gen, bind_disc;
  const ad::Tape::VarId xv = tape.input(batch_real, "batch_real");
  const ad::Tape::VarId zv = tape.input(z, "z");
  const ad::Tape::VarId gz = gen.forward(tape, zv, bind_gen);
  const ad::Tape::VarId dx = disc.forward(tape, xv, bind_disc);
  const ad::Tape::VarId dgz = disc.forward(tape, gz, bind_disc);
  const ad::Tape::VarId loss_real = graph::composite_loss_node(tape, xv, dx, w, filter);
  const ad::Tape::VarId loss_fake =
      graph::composite_loss_node(tape, gz, dgz, w, filter);
  const ad::Tape::VarId loss_d = tape.sub(loss_real, tape.scale(loss_fake, k));

  ForwardBackwardResult result;
  result.losses = {tape.value(loss_real).v[0], tape.value(loss_fake).v[0]};

  tape.backward(loss_d);
  for (const auto& [tensor, id] : bind_disc.entries())
    result.disc_grads.emplace_back(tensor, tape.grad(id));

  tape.backward(loss_fake);
  for (const auto& [tensor, id] : bind_gen.entries())
    result.gen_grads.emplace_back(tensor, tape.grad(id));
  return result;
}

Trainer::Trainer(const TrainerConfig& cfg)
    : cfg_(cfg), z_rng_(derive_seed(cfg.seed, kLatentStream)) {
  check_trainer_config(cfg_);
  SyntheticSpec spec;
  spec.count = cfg_.dataset_count;
  spec.image_size = cfg_.image_size;
  spec.seed = derive_seed(cfg_.seed, kDatasetStream);
  dataset_ = make_dataset(spec);
  init_networks();
  equilibrium_ = EquilibriumState{cfg_.k0, cfg_.gamma, cfg_.lambda_k, 0};
}

void Trainer::init_networks() {
  Rng init_rng(derive_seed(cfg_.seed, kInitStream));
  gen_ = make_generator(cfg_.image_size, cfg_.n_z, init_rng);
  disc_ = make_discriminator(cfg_.image_size, cfg_.n_z, init_rng);
  gen_params_.clear();
  disc_params_.clear();
  gen_.collect(gen_params_);
  disc_.collect(disc_params_);
  gen_moments_.assign(gen_params_.size(), AdamMoments{});
  disc_moments_.assign(disc_params_.size(), AdamMoments{});
}

void Trainer::reshuffle() {
  order_.resize(dataset_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
  // One fresh stream per epoch keeps the shuffle a pure function of
  // (seed, epoch) so checkpoints only need to store counters.
  Rng rng(derive_seed(derive_seed(cfg_.seed, kDatasetStream), epoch_ + 1));
  for (std::size_t i = order_.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(order_[i - 1], order_[j]);
  }
  cursor_ = 0;
}

Tensor Trainer::next_batch() {
  const std::size_t b = static_cast<std::size_t>(cfg_.batch_size);
  if (order_.empty() || cursor_ + b > order_.size()) {
    if (!order_.empty()) ++epoch_;
    reshuffle();
  }
  std::vector<int> indices(order_.begin() + cursor_, order_.begin() + cursor_ + b);
  cursor_ += b;
  return images_to_tensor(dataset_, indices);
}

Tensor Trainer::sample_latent(int count) {
  Tensor z({count, cfg_.n_z});
  for (double& v : z.v) v = z_rng_.uniform(-1.0, 1.0);
  return z;
}

TrainStepRecord Trainer::step() {
  const Tensor batch = next_batch();
  const Tensor z = sample_latent(cfg_.batch_size);
  const double k = equilibrium_.k;

  ForwardBackwardResult fb =
      forward_backward(gen_, disc_, batch, z, cfg_.weights, cfg_.filter, k);

  const std::int64_t t = static_cast<std::int64_t>(equilibrium_.step) + 1;
  const double lr_now =
      cfg_.lr / std::pow(cfg_.lr_decay_factor,
                         std::floor(static_cast<double>(equilibrium_.step) /
                                    cfg_.lr_decay_interval));
  for (std::size_t i = 0; i < fb.disc_grads.size(); ++i) {
    auto& [tensor, grad] = fb.disc_grads[i];
    adam_update(*tensor, grad, disc_moments_[i], t, lr_now, cfg_.beta1, cfg_.beta2);
  }
  for (std::size_t i = 0; i < fb.gen_grads.size(); ++i) {
    auto& [tensor, grad] = fb.gen_grads[i];
    adam_update(*tensor, grad, gen_moments_[i], t, lr_now, cfg_.beta1, cfg_.beta2);
  }

  TrainStepRecord rec;
  rec.step = equilibrium_.step;
  rec.loss_real = fb.losses.loss_real;
  rec.loss_fake = fb.losses.loss_fake;
  rec.k = k;
  rec.m_global = convergence_measure(fb.losses, cfg_.gamma);
  equilibrium_ = update_k(equilibrium_, fb.losses);
  history_.push_back(rec);
  return rec;
}

std::vector<double> Trainer::latent_from_seed(std::uint64_t seed) const {
  Rng rng(derive_seed(seed, kLatentStream));
  std::vector<double> z(cfg_.n_z);
  for (double& v : z) v = rng.uniform(-1.0, 1.0);
  return z;
}

Image Trainer::generate(const std::vector<double>& z) {
  require(static_cast<int>(z.size()) == cfg_.n_z, Status::kInvalidArgument,
          "generate: latent length mismatch");
  ad::Tape tape;
  Bindings bind;
  Tensor zt({1, cfg_.n_z});
  zt.v = z;
  const auto out = gen_.forward(tape, tape.input(std::move(zt), "z"), bind);
  return tensor_slice_to_image(tape.value(out), 0);
}

std::vector<Image> Trainer::interpolate(const std::vector<double>& z_a,
                                        const std::vector<double>& z_b, int n) {
  require(static_cast<int>(z_a.size()) == cfg_.n_z &&
              static_cast<int>(z_b.size()) == cfg_.n_z,
          Status::kInvalidArgument, "interpolate: latent length mismatch");
  require(n >= 2, Status::kInvalidArgument, "interpolate: n must be >= 2");
  Tensor z({n, cfg_.n_z});
  for (int i = 0; i < n; ++i) {
    const double alpha = static_cast<double>(i) / (n - 1);
    for (int j = 0; j < cfg_.n_z; ++j)
      z.v[static_cast<std::size_t>(i) * cfg_.n_z + j] =
          (1.0 - alpha) * z_a[j] + alpha * z_b[j];
  }
  ad::Tape tape;
  Bindings bind;
  const auto out = gen_.forward(tape, tape.input(std::move(z), "z"), bind);
  std::vector<Image> images;
  images.reserve(n);
  for (int i = 0; i < n; ++i)
    images.push_back(tensor_slice_to_image(tape.value(out), i));
  return images;
}

Image Trainer::sample_grid(std::uint64_t seed, int count, int cols) {
  require(count > 0 && cols > 0, Status::kInvalidArgument,
          "sample_grid: count and cols must be positive");
  Rng rng(derive_seed(seed, kLatentStream));
  Tensor z({count, cfg_.n_z});
  for (double& v : z.v) v = rng.uniform(-1.0, 1.0);
  ad::Tape tape;
  Bindings bind;
  const auto out = gen_.forward(tape, tape.input(std::move(z), "z"), bind);

  const int rows = (count + cols - 1) / cols;
  const int s = cfg_.image_size;
  Image grid(cols * s, rows * s, 3);
  for (int i = 0; i < count; ++i) {
    const Image tile = tensor_slice_to_image(tape.value(out), i);
    const int oy = (i / cols) * s, ox = (i % cols) * s;
    for (int y = 0; y < s; ++y)
      for (int x = 0; x < s; ++x)
        for (int c = 0; c < 3; ++c)
          grid.at(oy + y, ox + x, c) = tile.at(y, x, c);
  }
  return grid;
}

// ---- trainer config file ----

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string encode_trainer_config(const TrainerConfig& cfg) {
  std::ostringstream os;
  os << "n_z = " << cfg.n_z << '\n';
  os << "image_size = " << cfg.image_size << '\n';
  os << "batch_size = " << cfg.batch_size << '\n';
  os << "lr = " << format_double(cfg.lr) << '\n';
  os << "beta1 = " << format_double(cfg.beta1) << '\n';
  os << "beta2 = " << format_double(cfg.beta2) << '\n';
  os << "lambda_k = " << format_double(cfg.lambda_k) << '\n';
  os << "k0 = " << format_double(cfg.k0) << '\n';
  os << "gamma = " << format_double(cfg.gamma) << '\n';
  os << "steps = " << cfg.steps << '\n';
  os << "seed = " << cfg.seed << '\n';
  os << "beta_l1 = " << format_double(cfg.weights.l1) << '\n';
  os << "beta_gmsm = " << format_double(cfg.weights.gmsm) << '\n';
  os << "beta_chrom = " << format_double(cfg.weights.chrom) << '\n';
  os << "lr_decay_interval = " << cfg.lr_decay_interval << '\n';
  os << "lr_decay_factor = " << format_double(cfg.lr_decay_factor) << '\n';
  os << "dataset_count = " << cfg.dataset_count << '\n';
  os << "filter = "
     << (cfg.filter == GradientFilter::kSobel ? "sobel" : "prewitt") << '\n';
  return os.str();
}

TrainerConfig read_trainer_config(const std::string& path) {
  std::ifstream f(path);
  require(f.is_open(), Status::kIoError, "cannot open: " + path);
  TrainerConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, Status::kInvalidArgument,
            "config: line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "n_z")
        cfg.n_z = std::stoi(value);
      else if (key == "image_size")
        cfg.image_size = std::stoi(value);
      else if (key == "batch_size")
        cfg.batch_size = std::stoi(value);
      else if (key == "lr")
        cfg.lr = std::stod(value);
      else if (key == "beta1")
        cfg.beta1 = std::stod(value);
      else if (key == "beta2")
        cfg.beta2 = std::stod(value);
      else if (key == "lambda_k")
        cfg.lambda_k = std::stod(value);
      else if (key == "k0")
        cfg.k0 = std::stod(value);
      else if (key == "gamma")
        cfg.gamma = std::stod(value);
      else if (key == "steps")
        cfg.steps = std::stoll(value);
      else if (key == "seed")
        cfg.seed = std::stoull(value);
      else if (key == "beta_l1")
        cfg.weights.l1 = std::stod(value);
      else if (key == "beta_gmsm")
        cfg.weights.gmsm = std::stod(value);
      else if (key == "beta_chrom")
        cfg.weights.chrom = std::stod(value);
      else if (key == "lr_decay_interval")
        cfg.lr_decay_interval = std::stoi(value);
      else if (key == "lr_decay_factor")
        cfg.lr_decay_factor = std::stod(value);
      else if (key == "dataset_count")
        cfg.dataset_count = std::stoi(value);
      else if (key == "filter") {
        if (value == "sobel")
          cfg.filter = GradientFilter::kSobel;
        else if (value == "prewitt")
          cfg.filter = GradientFilter::kPrewitt;
        else
          fail(Status::kInvalidArgument,
               "config: line " + std::to_string(lineno) + ": bad filter");
      } else {
        fail(Status::kInvalidArgument,
             "config: line " + std::to_string(lineno) + ": unknown key '" + key +
                 "'");
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(Status::kInvalidArgument,
           "config: line " + std::to_string(lineno) + ": bad value for '" + key +
               "'");
    }
  }
  check_trainer_config(cfg);
  return cfg;
}

}  // namespace iqg
