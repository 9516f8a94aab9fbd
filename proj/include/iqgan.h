/* Copyright 2026 The iqgan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the iqgan shared library: full-reference image quality
 * metrics (l1, gradient-magnitude similarity, chrominance, cQS), equal-MSE
 * distortion generators, the equilibrium feedback controller with its
 * convergence measure, and a small autoencoder-GAN trainer.
 *
 * Conventions: functions return iqg_status (IQG_OK on success); the
 * thread-local message from iqg_last_error() describes the most recent
 * failure on the calling thread. Objects behind opaque handles are created
 * by iqg_*_create/load functions and released with the matching free
 * function. Pixel data is row-major, channel-interleaved, values in [0,1].
 */

#ifndef IQGAN_H_
#define IQGAN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IQG_API __declspec(dllexport)
#else
#define IQG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iqg_status {
  IQG_OK = 0,
  IQG_ERR_IO = 1,
  IQG_ERR_INVALID = 2,
  IQG_ERR_UNSUPPORTED = 3,
  IQG_ERR_NUMERIC = 4,
  IQG_ERR_UNREACHABLE = 5,
} iqg_status;

IQG_API const char* iqg_status_name(iqg_status status);

/* Message for the last failure on this thread; empty string if none. */
IQG_API const char* iqg_last_error(void);

IQG_API const char* iqg_version(void);

/* ---- images ---- */

typedef struct iqg_image iqg_image;

/* data may be NULL for an all-zero image; length w*h*channels otherwise. */
IQG_API iqg_status iqg_image_create(int width, int height, int channels,
                                    const double* data, iqg_image** out);
IQG_API void iqg_image_free(iqg_image* img);

IQG_API iqg_status iqg_image_load(const char* path, iqg_image** out);
IQG_API iqg_status iqg_image_save(const iqg_image* img, const char* path);

IQG_API int iqg_image_width(const iqg_image* img);
IQG_API int iqg_image_height(const iqg_image* img);
IQG_API int iqg_image_channels(const iqg_image* img);
/* Borrowed pointer, valid until the image is freed or mutated. */
IQG_API const double* iqg_image_data(const iqg_image* img);

typedef enum iqg_mse_scale {
  IQG_MSE_UNIT = 0,     /* samples in [0,1] */
  IQG_MSE_EIGHT_BIT = 1 /* differences scaled by 255 before squaring */
} iqg_mse_scale;

IQG_API iqg_status iqg_mse(const iqg_image* a, const iqg_image* b,
                           iqg_mse_scale scale, double* out);

typedef enum iqg_distortion_kind {
  IQG_DISTORT_CONSTANT_SHIFT = 0,
  IQG_DISTORT_CONTRAST_STRETCH = 1,
  IQG_DISTORT_IMPULSE_NOISE = 2,
  IQG_DISTORT_GAUSSIAN_BLUR = 3,
} iqg_distortion_kind;

/* Distorted copy whose eight-bit MSE lands within 1% of target_mse;
 * IQG_ERR_UNREACHABLE when the kind cannot reach the target. */
IQG_API iqg_status iqg_make_distortion(const iqg_image* img,
                                       iqg_distortion_kind kind,
                                       double target_mse, uint64_t seed,
                                       iqg_image** out);

/* ---- metrics ---- */

typedef enum iqg_filter {
  IQG_FILTER_SOBEL = 0,
  IQG_FILTER_PREWITT = 1,
} iqg_filter;

typedef struct iqg_scores {
  double l1;             /* mean absolute difference */
  double gmsm_distance;  /* 1 - mean gradient-magnitude similarity */
  double chrom_distance; /* 1 - chrominance similarity */
  double gmsd;           /* population std of the GMS map */
  double cqs;            /* GMSM (Sobel) + chrominance similarity */
} iqg_scores;

IQG_API iqg_status iqg_score_pair(const iqg_image* ref, const iqg_image* dist,
                                  iqg_filter filter, iqg_scores* out);

typedef struct iqg_weights {
  double l1;
  double gmsm;
  double chrom;
} iqg_weights;

IQG_API iqg_status iqg_composite_distance(const iqg_image* ref,
                                          const iqg_image* dist,
                                          const iqg_weights* weights,
                                          iqg_filter filter, double* out);

/* ---- model zoo ---- */

typedef struct iqg_model_config {
  int model_id;
  int image_size;
  double gamma;
  iqg_weights weights;
} iqg_model_config;

IQG_API int iqg_builtin_model_count(void);
/* Copies min(capacity, count) entries; returns IQG_ERR_INVALID if capacity
 * is smaller than the builtin count. */
IQG_API iqg_status iqg_builtin_models(iqg_model_config* out, int capacity);
IQG_API iqg_status iqg_models_write(const char* path,
                                    const iqg_model_config* models, int count);
IQG_API iqg_status iqg_models_read(const char* path, iqg_model_config* out,
                                   int capacity, int* count);

/* ---- equilibrium controller ---- */

typedef struct iqg_equilibrium {
  double k;
  double gamma;
  double lambda_k;
  uint64_t step;
} iqg_equilibrium;

IQG_API iqg_status iqg_discriminator_loss(const iqg_equilibrium* state,
                                          double loss_real, double loss_fake,
                                          double* out);
IQG_API iqg_status iqg_generator_loss(double loss_fake, double* out);
/* In-place k <- clamp(k + lambda_k (gamma L(x) - L(G(z))), 0, 1), step++. */
IQG_API iqg_status iqg_equilibrium_update(iqg_equilibrium* state,
                                          double loss_real, double loss_fake);
IQG_API iqg_status iqg_convergence_measure(double gamma, double loss_real,
                                           double loss_fake, double* out);

/* Gaussian smoothing of a series, kernel radius ceil(4 sigma), reflected
 * bounds. in and out may alias. */
IQG_API iqg_status iqg_gaussian_smooth(const double* in, size_t n, double sigma,
                                       double* out);

/* Reads a loss-log CSV (header `step,loss_real,loss_fake`), writes a replay
 * CSV (header `step,m_raw,m_smooth,k`) with the controller replayed from k0. */
IQG_API iqg_status iqg_replay_csv(const char* in_path, const char* out_path,
                                  double gamma, double sigma, double lambda_k,
                                  double k0);

/* ---- trainer ---- */

typedef struct iqg_trainer_config {
  int n_z;
  int image_size;
  int batch_size;
  double lr;
  double beta1;
  double beta2;
  int lr_decay_interval;
  double lr_decay_factor;
  double lambda_k;
  double k0;
  double gamma;
  iqg_weights weights;
  iqg_filter filter;
  int64_t steps;
  uint64_t seed;
  int dataset_count;
} iqg_trainer_config;

IQG_API void iqg_trainer_config_default(iqg_trainer_config* cfg);
IQG_API iqg_status iqg_trainer_config_load(const char* path,
                                           iqg_trainer_config* cfg);

typedef struct iqg_trainer iqg_trainer;

IQG_API iqg_status iqg_trainer_create(const iqg_trainer_config* cfg,
                                      iqg_trainer** out);
IQG_API void iqg_trainer_free(iqg_trainer* trainer);

typedef struct iqg_step_record {
  uint64_t step;
  double loss_real;
  double loss_fake;
  double k;        /* controller value applied at this step */
  double m_global; /* convergence measure, unsmoothed */
} iqg_step_record;

IQG_API iqg_status iqg_trainer_step(iqg_trainer* trainer, iqg_step_record* out);

IQG_API int iqg_trainer_latent_dim(const iqg_trainer* trainer);
IQG_API int iqg_trainer_image_size(const iqg_trainer* trainer);
IQG_API uint64_t iqg_trainer_current_step(const iqg_trainer* trainer);

IQG_API iqg_status iqg_trainer_save(const iqg_trainer* trainer, const char* path);
IQG_API iqg_status iqg_trainer_load(const char* path, iqg_trainer** out);

/* Deterministic latent vector of length n_z from a seed; z has space for
 * n_z doubles. */
IQG_API iqg_status iqg_trainer_latent_from_seed(const iqg_trainer* trainer,
                                                uint64_t seed, double* z);
/* Generator output for an explicit latent vector (length n_z). */
IQG_API iqg_status iqg_trainer_generate(iqg_trainer* trainer, const double* z,
                                        iqg_image** out);
/* Horizontal strip of n generations along the segment between the latents
 * of seed_a and seed_b, endpoints included. */
IQG_API iqg_status iqg_trainer_interpolate(iqg_trainer* trainer, uint64_t seed_a,
                                           uint64_t seed_b, int n,
                                           iqg_image** out);
/* Tiled grid of `count` samples, `cols` per row, drawn from `seed`. */
IQG_API iqg_status iqg_trainer_sample_grid(iqg_trainer* trainer, uint64_t seed,
                                           int count, int cols, iqg_image** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IQGAN_H_ */
