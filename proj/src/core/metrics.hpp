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

#ifndef IQGAN_CORE_METRICS_HPP_
#define IQGAN_CORE_METRICS_HPP_

#include "core/image.hpp"
#include "core/signal.hpp"

namespace iqg {

// Stabilizing constant of the similarity ratio, shared by the gradient and
// chrominance similarities.
inline constexpr double kSimilarityC = 0.0026;

// Offsets that make the signed I/Q planes nonnegative before the similarity
// ratio is applied, preserving its [0,1] bound and equality maximum.
inline constexpr double kIShift = kIBound;
inline constexpr double kQShift = kQBound;

// Elementwise (2*v1*v2 + C) / (v1^2 + v2^2 + C). For nonnegative inputs the
// result lies in [0,1] with 1 exactly where the inputs are equal.
Plane similarity(const Plane& v1, const Plane& v2, double c = kSimilarityC);

// Gradient magnitude similarity map of the luminance channels.
Plane gms_map(const Image& ref, const Image& dist,
              GradientFilter filter = GradientFilter::kSobel);

double pool_gmsm(const Plane& map);  // arithmetic mean
double pool_gmsd(const Plane& map);  // population standard deviation

// Mean of the elementwise product of the I and Q similarity maps.
double chrominance_similarity(const Image& ref, const Image& dist);

// GMSM on the luminance channel (Sobel) plus the chrominance similarity;
// range (0, 2] with 2 at equality.
double cqs(const Image& ref, const Image& dist);

// Mean absolute difference over all samples.
double l1_distance(const Image& ref, const Image& dist);

struct MetricScores {
  double l1 = 0;
  double gmsm_distance = 0;   // 1 - mean(GMS map)
  double chrom_distance = 0;  // 1 - chrominance similarity
  double gmsd = 0;
  double cqs = 0;
};

// All five scores for a 3-channel pair. gmsm_distance and gmsd use the
// given filter; cqs always uses Sobel.
MetricScores score_pair(const Image& ref, const Image& dist,
                        GradientFilter filter = GradientFilter::kSobel);

}  // namespace iqg

#endif  // IQGAN_CORE_METRICS_HPP_
