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

#include "core/loss.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace iqg {

void check_weights(const MetricWeights& w) {
  require(std::isfinite(w.l1) && std::isfinite(w.gmsm) && std::isfinite(w.chrom),
          Status::kInvalidArgument, "weights must be finite");
  require(w.l1 >= 0 && w.gmsm >= 0 && w.chrom >= 0, Status::kInvalidArgument,
          "weights must be nonnegative");
  require(w.l1 + w.gmsm + w.chrom > 0, Status::kInvalidArgument,
          "at least one weight must be positive");
}

double combine_distances(double d_l1, double d_gmsm, double d_chrom,
                         const MetricWeights& w) {
  check_weights(w);
  return (w.l1 * d_l1 + w.gmsm * d_gmsm + w.chrom * d_chrom) /
         (w.l1 + w.gmsm + w.chrom);
}

double composite_distance(const Image& ref, const Image& dist,
                          const MetricWeights& w, GradientFilter filter) {
  check_weights(w);
  require(!(w.chrom > 0 && (ref.channels != 3 || dist.channels != 3)),
          Status::kInvalidArgument,
          "composite_distance: chrominance weight requires 3-channel images");
  const double d_l1 = w.l1 > 0 ? l1_distance(ref, dist) : 0.0;
  const double d_gmsm = w.gmsm > 0 ? 1.0 - pool_gmsm(gms_map(ref, dist, filter)) : 0.0;
  const double d_chrom = w.chrom > 0 ? 1.0 - chrominance_similarity(ref, dist) : 0.0;
  return combine_distances(d_l1, d_gmsm, d_chrom, w);
}

const std::array<ModelConfig, 12>& builtin_models() {
  static const std::array<ModelConfig, 12> kModels = {{
      {1, 64, 0.5, {1, 0, 0}},
      {2, 64, 0.5, {0, 1, 0}},
      {3, 64, 0.5, {0, 0, 1}},
      {4, 64, 0.5, {1, 1, 0}},
      {5, 64, 0.5, {1, 1, 1}},
      {6, 64, 0.5, {2, 1, 0}},
      {7, 64, 0.7, {1, 0, 0}},
      {8, 64, 0.7, {1, 1, 0}},
      {9, 64, 0.7, {1, 1, 1}},
      {10, 64, 0.7, {2, 1, 0}},
      {11, 128, 0.7, {1, 0, 0}},
      {12, 128, 0.7, {2, 1, 0}},
  }};
  return kModels;
}

namespace {
constexpr const char* kModelHeader =
    "model_id,image_size,gamma,beta_l1,beta_gmsm,beta_chrom";
}

std::string encode_model_table(const std::vector<ModelConfig>& models) {
  std::string out(kModelHeader);
  out += '\n';
  for (const ModelConfig& m : models) {
    out += std::to_string(m.model_id) + ',' + std::to_string(m.image_size) +
           ',' + format_double(m.gamma) + ',' + format_double(m.weights.l1) +
           ',' + format_double(m.weights.gmsm) + ',' +
           format_double(m.weights.chrom) + '\n';
  }
  return out;
}

std::vector<ModelConfig> decode_model_table(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), Status::kInvalidArgument,
          "model table: empty file");
  require(line == kModelHeader, Status::kInvalidArgument,
          "model table: bad header: " + line);
  std::vector<ModelConfig> out;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    require(fields.size() == 6, Status::kInvalidArgument,
            "model table: line " + std::to_string(lineno) + ": want 6 fields");
    ModelConfig m;
    try {
      m.model_id = std::stoi(fields[0]);
      m.image_size = std::stoi(fields[1]);
      m.gamma = std::stod(fields[2]);
      m.weights.l1 = std::stod(fields[3]);
      m.weights.gmsm = std::stod(fields[4]);
      m.weights.chrom = std::stod(fields[5]);
    } catch (const std::exception&) {
      fail(Status::kInvalidArgument,
           "model table: line " + std::to_string(lineno) + ": bad number");
    }
    check_weights(m.weights);
    out.push_back(m);
  }
  return out;
}

void write_model_table(const std::string& path,
                       const std::vector<ModelConfig>& models) {
  std::ofstream f(path, std::ios::binary);
  require(f.is_open(), Status::kIoError, "cannot open for writing: " + path);
  f << encode_model_table(models);
  require(f.good(), Status::kIoError, "short write: " + path);
}

std::vector<ModelConfig> read_model_table(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.is_open(), Status::kIoError, "cannot open: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return decode_model_table(ss.str());
}

EpochStats accumulate_stats(const std::vector<MetricScores>& history) {
  require(!history.empty(), Status::kInvalidArgument,
          "accumulate_stats: empty history");
  EpochStats stats;
  stats.epochs = history.size();
  const double n = static_cast<double>(history.size());

  auto accumulate = [&](auto field) {
    double mean = 0.0;
    for (const MetricScores& s : history) mean += s.*field;
    mean /= n;
    double var = 0.0;
    for (const MetricScores& s : history) {
      const double d = s.*field - mean;
      var += d * d;
    }
    stats.mean.*field = mean;
    stats.sigma.*field = std::sqrt(var / n);  // population sigma
  };
  accumulate(&MetricScores::l1);
  accumulate(&MetricScores::gmsm_distance);
  accumulate(&MetricScores::chrom_distance);
  accumulate(&MetricScores::gmsd);
  accumulate(&MetricScores::cqs);
  return stats;
}

}  // namespace iqg
