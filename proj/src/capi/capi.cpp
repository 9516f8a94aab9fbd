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

#include "iqgan.h"

#include <cstring>
#include <string>

#include "core/began.hpp"
#include "core/image.hpp"
#include "core/loss.hpp"
#include "core/metrics.hpp"
#include "core/signal.hpp"
#include "core/trainer.hpp"

struct iqg_image {
  iqg::Image img;
};

struct iqg_trainer {
  std::unique_ptr<iqg::Trainer> impl;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& msg) { t_last_error = msg; }

iqg_status status_of(const iqg::Error& e) {
  switch (e.status()) {
    case iqg::Status::kOk:
      return IQG_OK;
    case iqg::Status::kIoError:
      return IQG_ERR_IO;
    case iqg::Status::kInvalidArgument:
      return IQG_ERR_INVALID;
    case iqg::Status::kUnsupported:
      return IQG_ERR_UNSUPPORTED;
    case iqg::Status::kNumericError:
      return IQG_ERR_NUMERIC;
    case iqg::Status::kUnreachableTarget:
      return IQG_ERR_UNREACHABLE;
  }
  return IQG_ERR_INVALID;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
iqg_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return IQG_OK;
  } catch (const iqg::Error& e) {
    set_error(e.what());
    return status_of(e);
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return IQG_ERR_NUMERIC;
  } catch (const std::exception& e) {
    set_error(e.what());
    return IQG_ERR_INVALID;
  }
}

iqg_status arg_error(const char* msg) {
  set_error(msg);
  return IQG_ERR_INVALID;
}

iqg::GradientFilter to_filter(iqg_filter f) {
  return f == IQG_FILTER_PREWITT ? iqg::GradientFilter::kPrewitt
                                 : iqg::GradientFilter::kSobel;
}

iqg::MetricWeights to_weights(const iqg_weights& w) {
  return {w.l1, w.gmsm, w.chrom};
}

iqg::TrainerConfig to_config(const iqg_trainer_config& c) {
  iqg::TrainerConfig cfg;
  cfg.n_z = c.n_z;
  cfg.image_size = c.image_size;
  cfg.batch_size = c.batch_size;
  cfg.lr = c.lr;
  cfg.beta1 = c.beta1;
  cfg.beta2 = c.beta2;
  cfg.lr_decay_interval = c.lr_decay_interval;
  cfg.lr_decay_factor = c.lr_decay_factor;
  cfg.lambda_k = c.lambda_k;
  cfg.k0 = c.k0;
  cfg.gamma = c.gamma;
  cfg.weights = to_weights(c.weights);
  cfg.filter = to_filter(c.filter);
  cfg.steps = c.steps;
  cfg.seed = c.seed;
  cfg.dataset_count = c.dataset_count;
  return cfg;
}

iqg_trainer_config from_config(const iqg::TrainerConfig& cfg) {
  iqg_trainer_config c;
  c.n_z = cfg.n_z;
  c.image_size = cfg.image_size;
  c.batch_size = cfg.batch_size;
  c.lr = cfg.lr;
  c.beta1 = cfg.beta1;
  c.beta2 = cfg.beta2;
  c.lr_decay_interval = cfg.lr_decay_interval;
  c.lr_decay_factor = cfg.lr_decay_factor;
  c.lambda_k = cfg.lambda_k;
  c.k0 = cfg.k0;
  c.gamma = cfg.gamma;
  c.weights = {cfg.weights.l1, cfg.weights.gmsm, cfg.weights.chrom};
  c.filter = cfg.filter == iqg::GradientFilter::kPrewitt ? IQG_FILTER_PREWITT
                                                         : IQG_FILTER_SOBEL;
  c.steps = cfg.steps;
  c.seed = cfg.seed;
  c.dataset_count = cfg.dataset_count;
  return c;
}

iqg_image* wrap_image(iqg::Image img) { return new iqg_image{std::move(img)}; }

}  // namespace

extern "C" {

const char* iqg_status_name(iqg_status status) {
  switch (status) {
    case IQG_OK:
      return "ok";
    case IQG_ERR_IO:
      return "io_error";
    case IQG_ERR_INVALID:
      return "invalid_argument";
    case IQG_ERR_UNSUPPORTED:
      return "unsupported";
    case IQG_ERR_NUMERIC:
      return "numeric_error";
    case IQG_ERR_UNREACHABLE:
      return "unreachable_target";
  }
  return "unknown";
}

const char* iqg_last_error(void) { return t_last_error.c_str(); }

const char* iqg_version(void) { return iqg::kVersion; }

iqg_status iqg_image_create(int width, int height, int channels,
                            const double* data, iqg_image** out) {
  if (!out) return arg_error("iqg_image_create: out is null");
  return guarded([&] {
    iqg::Image img(width, height, channels);
    if (data) {
      std::memcpy(img.data.data(), data, img.data.size() * sizeof(double));
      iqg::check_image(img, "iqg_image_create");
    }
    *out = wrap_image(std::move(img));
  });
}

void iqg_image_free(iqg_image* img) { delete img; }

iqg_status iqg_image_load(const char* path, iqg_image** out) {
  if (!path || !out) return arg_error("iqg_image_load: null argument");
  return guarded([&] { *out = wrap_image(iqg::load_image(path)); });
}

iqg_status iqg_image_save(const iqg_image* img, const char* path) {
  if (!img || !path) return arg_error("iqg_image_save: null argument");
  return guarded([&] { iqg::save_image(img->img, path); });
}

int iqg_image_width(const iqg_image* img) { return img ? img->img.width : 0; }
int iqg_image_height(const iqg_image* img) { return img ? img->img.height : 0; }
int iqg_image_channels(const iqg_image* img) {
  return img ? img->img.channels : 0;
}
const double* iqg_image_data(const iqg_image* img) {
  return img ? img->img.data.data() : nullptr;
}

iqg_status iqg_mse(const iqg_image* a, const iqg_image* b, iqg_mse_scale scale,
                   double* out) {
  if (!a || !b || !out) return arg_error("iqg_mse: null argument");
  return guarded([&] {
    *out = iqg::mse(a->img, b->img,
                    scale == IQG_MSE_EIGHT_BIT ? iqg::MseScale::kEightBit
                                               : iqg::MseScale::kUnit);
  });
}

iqg_status iqg_make_distortion(const iqg_image* img, iqg_distortion_kind kind,
                               double target_mse, uint64_t seed,
                               iqg_image** out) {
  if (!img || !out) return arg_error("iqg_make_distortion: null argument");
  return guarded([&] {
    iqg::DistortionKind k;
    switch (kind) {
      case IQG_DISTORT_CONSTANT_SHIFT:
        k = iqg::DistortionKind::kConstantShift;
        break;
      case IQG_DISTORT_CONTRAST_STRETCH:
        k = iqg::DistortionKind::kContrastStretch;
        break;
      case IQG_DISTORT_IMPULSE_NOISE:
        k = iqg::DistortionKind::kImpulseNoise;
        break;
      case IQG_DISTORT_GAUSSIAN_BLUR:
        k = iqg::DistortionKind::kGaussianBlur;
        break;
      default:
        iqg::fail(iqg::Status::kInvalidArgument, "bad distortion kind");
    }
    *out = wrap_image(iqg::make_distortion(img->img, k, target_mse, seed));
  });
}

iqg_status iqg_score_pair(const iqg_image* ref, const iqg_image* dist,
                          iqg_filter filter, iqg_scores* out) {
  if (!ref || !dist || !out) return arg_error("iqg_score_pair: null argument");
  return guarded([&] {
    const iqg::MetricScores s = iqg::score_pair(ref->img, dist->img, to_filter(filter));
    *out = {s.l1, s.gmsm_distance, s.chrom_distance, s.gmsd, s.cqs};
  });
}

iqg_status iqg_composite_distance(const iqg_image* ref, const iqg_image* dist,
                                  const iqg_weights* weights, iqg_filter filter,
                                  double* out) {
  if (!ref || !dist || !weights || !out)
    return arg_error("iqg_composite_distance: null argument");
  return guarded([&] {
    *out = iqg::composite_distance(ref->img, dist->img, to_weights(*weights),
                                   to_filter(filter));
  });
}

int iqg_builtin_model_count(void) {
  return static_cast<int>(iqg::builtin_models().size());
}

iqg_status iqg_builtin_models(iqg_model_config* out, int capacity) {
  if (!out) return arg_error("iqg_builtin_models: out is null");
  const auto& models = iqg::builtin_models();
  if (capacity < static_cast<int>(models.size()))
    return arg_error("iqg_builtin_models: capacity too small");
  for (std::size_t i = 0; i < models.size(); ++i) {
    const iqg::ModelConfig& m = models[i];
    out[i] = {m.model_id,
              m.image_size,
              m.gamma,
              {m.weights.l1, m.weights.gmsm, m.weights.chrom}};
  }
  t_last_error.clear();
  return IQG_OK;
}

iqg_status iqg_models_write(const char* path, const iqg_model_config* models,
                            int count) {
  if (!path || !models || count < 0)
    return arg_error("iqg_models_write: bad argument");
  return guarded([&] {
    std::vector<iqg::ModelConfig> v;
    v.reserve(count);
    for (int i = 0; i < count; ++i) {
      v.push_back({models[i].model_id,
                   models[i].image_size,
                   models[i].gamma,
                   {models[i].weights.l1, models[i].weights.gmsm,
                    models[i].weights.chrom}});
    }
    iqg::write_model_table(path, v);
  });
}

iqg_status iqg_models_read(const char* path, iqg_model_config* out, int capacity,
                           int* count) {
  if (!path || !count) return arg_error("iqg_models_read: bad argument");
  return guarded([&] {
    const std::vector<iqg::ModelConfig> v = iqg::read_model_table(path);
    *count = static_cast<int>(v.size());
    if (!out) return;
    iqg::require(capacity >= static_cast<int>(v.size()),
                 iqg::Status::kInvalidArgument,
                 "iqg_models_read: capacity too small");
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] = {v[i].model_id,
                v[i].image_size,
                v[i].gamma,
                {v[i].weights.l1, v[i].weights.gmsm, v[i].weights.chrom}};
    }
  });
}

iqg_status iqg_discriminator_loss(const iqg_equilibrium* state, double loss_real,
                                  double loss_fake, double* out) {
  if (!state || !out) return arg_error("iqg_discriminator_loss: null argument");
  return guarded([&] {
    const iqg::EquilibriumState s{state->k, state->gamma, state->lambda_k,
                                  state->step};
    *out = iqg::discriminator_loss({loss_real, loss_fake}, s);
  });
}

iqg_status iqg_generator_loss(double loss_fake, double* out) {
  if (!out) return arg_error("iqg_generator_loss: out is null");
  return guarded([&] { *out = iqg::generator_loss({0.0, loss_fake}); });
}

iqg_status iqg_equilibrium_update(iqg_equilibrium* state, double loss_real,
                                  double loss_fake) {
  if (!state) return arg_error("iqg_equilibrium_update: state is null");
  return guarded([&] {
    const iqg::EquilibriumState s{state->k, state->gamma, state->lambda_k,
                                  state->step};
    const iqg::EquilibriumState next = iqg::update_k(s, {loss_real, loss_fake});
    state->k = next.k;
    state->step = next.step;
  });
}

iqg_status iqg_convergence_measure(double gamma, double loss_real,
                                   double loss_fake, double* out) {
  if (!out) return arg_error("iqg_convergence_measure: out is null");
  return guarded(
      [&] { *out = iqg::convergence_measure({loss_real, loss_fake}, gamma); });
}

iqg_status iqg_gaussian_smooth(const double* in, size_t n, double sigma,
                               double* out) {
  if (!in || !out) return arg_error("iqg_gaussian_smooth: null argument");
  return guarded([&] {
    const std::vector<double> series(in, in + n);
    const std::vector<double> smooth = iqg::gaussian_smooth_series(series, sigma);
    std::memcpy(out, smooth.data(), smooth.size() * sizeof(double));
  });
}

iqg_status iqg_replay_csv(const char* in_path, const char* out_path, double gamma,
                          double sigma, double lambda_k, double k0) {
  if (!in_path || !out_path) return arg_error("iqg_replay_csv: null argument");
  return guarded([&] {
    const auto rows = iqg::read_loss_log(in_path);
    const auto records = iqg::replay_log(rows, gamma, sigma, lambda_k, k0);
    iqg::write_replay_csv(out_path, records);
  });
}

void iqg_trainer_config_default(iqg_trainer_config* cfg) {
  if (cfg) *cfg = from_config(iqg::TrainerConfig{});
}

iqg_status iqg_trainer_config_load(const char* path, iqg_trainer_config* cfg) {
  if (!path || !cfg) return arg_error("iqg_trainer_config_load: null argument");
  return guarded([&] { *cfg = from_config(iqg::read_trainer_config(path)); });
}

iqg_status iqg_trainer_create(const iqg_trainer_config* cfg, iqg_trainer** out) {
  if (!cfg || !out) return arg_error("iqg_trainer_create: null argument");
  return guarded([&] {
    *out = new iqg_trainer{std::make_unique<iqg::Trainer>(to_config(*cfg))};
  });
}

void iqg_trainer_free(iqg_trainer* trainer) { delete trainer; }

iqg_status iqg_trainer_step(iqg_trainer* trainer, iqg_step_record* out) {
  if (!trainer) return arg_error("iqg_trainer_step: trainer is null");
  return guarded([&] {
    const iqg::TrainStepRecord r = trainer->impl->step();
    if (out) *out = {r.step, r.loss_real, r.loss_fake, r.k, r.m_global};
  });
}

int iqg_trainer_latent_dim(const iqg_trainer* trainer) {
  return trainer ? trainer->impl->config().n_z : 0;
}

int iqg_trainer_image_size(const iqg_trainer* trainer) {
  return trainer ? trainer->impl->config().image_size : 0;
}

uint64_t iqg_trainer_current_step(const iqg_trainer* trainer) {
  return trainer ? trainer->impl->current_step() : 0;
}

iqg_status iqg_trainer_save(const iqg_trainer* trainer, const char* path) {
  if (!trainer || !path) return arg_error("iqg_trainer_save: null argument");
  return guarded([&] { trainer->impl->save_checkpoint(path); });
}

iqg_status iqg_trainer_load(const char* path, iqg_trainer** out) {
  if (!path || !out) return arg_error("iqg_trainer_load: null argument");
  return guarded([&] {
    *out = new iqg_trainer{iqg::Trainer::load_checkpoint(path)};
  });
}

iqg_status iqg_trainer_latent_from_seed(const iqg_trainer* trainer, uint64_t seed,
                                        double* z) {
  if (!trainer || !z)
    return arg_error("iqg_trainer_latent_from_seed: null argument");
  return guarded([&] {
    const std::vector<double> v = trainer->impl->latent_from_seed(seed);
    std::memcpy(z, v.data(), v.size() * sizeof(double));
  });
}

iqg_status iqg_trainer_generate(iqg_trainer* trainer, const double* z,
                                iqg_image** out) {
  if (!trainer || !z || !out) return arg_error("iqg_trainer_generate: null argument");
  return guarded([&] {
    const std::vector<double> v(z, z + trainer->impl->config().n_z);
    *out = wrap_image(trainer->impl->generate(v));
  });
}

iqg_status iqg_trainer_interpolate(iqg_trainer* trainer, uint64_t seed_a,
                                   uint64_t seed_b, int n, iqg_image** out) {
  if (!trainer || !out) return arg_error("iqg_trainer_interpolate: null argument");
  return guarded([&] {
    const auto za = trainer->impl->latent_from_seed(seed_a);
    const auto zb = trainer->impl->latent_from_seed(seed_b);
    const std::vector<iqg::Image> tiles = trainer->impl->interpolate(za, zb, n);
    const int s = trainer->impl->config().image_size;
    iqg::Image strip(n * s, s, 3);
    for (int i = 0; i < n; ++i)
      for (int y = 0; y < s; ++y)
        for (int x = 0; x < s; ++x)
          for (int c = 0; c < 3; ++c)
            strip.at(y, i * s + x, c) = tiles[i].at(y, x, c);
    *out = wrap_image(std::move(strip));
  });
}

iqg_status iqg_trainer_sample_grid(iqg_trainer* trainer, uint64_t seed, int count,
                                   int cols, iqg_image** out) {
  if (!trainer || !out) return arg_error("iqg_trainer_sample_grid: null argument");
  return guarded(
      [&] { *out = wrap_image(trainer->impl->sample_grid(seed, count, cols)); });
}

}  // extern "C"
