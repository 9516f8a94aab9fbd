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

#include "core/metrics.hpp"

#include <cmath>

namespace iqg {

namespace {

void require_same_dims(const Image& a, const Image& b, const char* what) {
  require(a.width == b.width && a.height == b.height && a.channels == b.channels,
          Status::kInvalidArgument, std::string(what) + ": dimension mismatch");
}

double plane_mean(const Plane& p) {
  double acc = 0.0;
  for (double v : p.v) acc += v;
  return acc / static_cast<double>(p.v.size());
}

}  // namespace

Plane similarity(const Plane& v1, const Plane& v2, double c) {
  require(v1.width == v2.width && v1.height == v2.height,
          Status::kInvalidArgument, "similarity: dimension mismatch");
  require(c > 0.0, Status::kInvalidArgument, "similarity: C must be positive");
  Plane out(v1.width, v1.height);
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    const double a = v1.v[i];
    const double b = v2.v[i];
    out.v[i] = (2.0 * a * b + c) / (a * a + b * b + c);
  }
  return out;
}

Plane gms_map(const Image& ref, const Image& dist, GradientFilter filter) {
  require_same_dims(ref, dist, "gms_map");
  require(ref.width >= 3 && ref.height >= 3, Status::kInvalidArgument,
          "gms_map: images must be at least 3x3");
  const Plane mr = gradient_magnitude(luminance_plane(ref), filter);
  const Plane md = gradient_magnitude(luminance_plane(dist), filter);
  return similarity(mr, md, kSimilarityC);
}

double pool_gmsm(const Plane& map) {
  require(!map.v.empty(), Status::kInvalidArgument, "pool_gmsm: empty map");
  return plane_mean(map);
}

double pool_gmsd(const Plane& map) {
  require(!map.v.empty(), Status::kInvalidArgument, "pool_gmsd: empty map");
  const double mean = plane_mean(map);
  double acc = 0.0;
  for (double v : map.v) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(map.v.size()));
}

double chrominance_similarity(const Image& ref, const Image& dist) {
  require(ref.channels == 3 && dist.channels == 3, Status::kInvalidArgument,
          "chrominance_similarity: 3-channel inputs required");
  require_same_dims(ref, dist, "chrominance_similarity");
  YiqPlanes a = rgb_to_yiq(ref);
  YiqPlanes b = rgb_to_yiq(dist);
  for (double& v : a.i.v) v += kIShift;
  for (double& v : b.i.v) v += kIShift;
  for (double& v : a.q.v) v += kQShift;
  for (double& v : b.q.v) v += kQShift;
  const Plane si = similarity(a.i, b.i, kSimilarityC);
  const Plane sq = similarity(a.q, b.q, kSimilarityC);
  double acc = 0.0;
  for (std::size_t i = 0; i < si.v.size(); ++i) acc += si.v[i] * sq.v[i];
  return acc / static_cast<double>(si.v.size());
}

double cqs(const Image& ref, const Image& dist) {
  return pool_gmsm(gms_map(ref, dist, GradientFilter::kSobel)) +
         chrominance_similarity(ref, dist);
}

double l1_distance(const Image& ref, const Image& dist) {
  require_same_dims(ref, dist, "l1_distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < ref.data.size(); ++i)
    acc += std::abs(ref.data[i] - dist.data[i]);
  return acc / static_cast<double>(ref.data.size());
}

MetricScores score_pair(const Image& ref, const Image& dist,
                        GradientFilter filter) {
  require(ref.channels == 3 && dist.channels == 3, Status::kInvalidArgument,
          "score_pair: 3-channel inputs required");
  require_same_dims(ref, dist, "score_pair");
  MetricScores s;
  const Plane gms = gms_map(ref, dist, filter);
  const double gmsm = pool_gmsm(gms);
  const double chrom = chrominance_similarity(ref, dist);
  s.l1 = l1_distance(ref, dist);
  s.gmsm_distance = 1.0 - gmsm;
  s.chrom_distance = 1.0 - chrom;
  s.gmsd = pool_gmsd(gms);
  s.cqs = filter == GradientFilter::kSobel
              ? gmsm + chrom
              : pool_gmsm(gms_map(ref, dist, GradientFilter::kSobel)) + chrom;
  return s;
}

}  // namespace iqg
