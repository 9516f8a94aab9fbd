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

#include "core/began.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/signal.hpp"

namespace iqg {

void check_loss_pair(const LossPair& p) {
  require(std::isfinite(p.loss_real) && std::isfinite(p.loss_fake),
          Status::kNumericError, "loss pair must be finite");
  require(p.loss_real >= 0.0 && p.loss_fake >= 0.0, Status::kInvalidArgument,
          "loss pair must be nonnegative");
}

double discriminator_loss(const LossPair& p, const EquilibriumState& s) {
  check_loss_pair(p);
  return p.loss_real - s.k * p.loss_fake;
}

double generator_loss(const LossPair& p) {
  check_loss_pair(p);
  return p.loss_fake;
}

EquilibriumState update_k(const EquilibriumState& s, const LossPair& p) {
  check_loss_pair(p);
  EquilibriumState next = s;
  const double raw = s.k + s.lambda_k * (s.gamma * p.loss_real - p.loss_fake);
  next.k = std::min(1.0, std::max(0.0, raw));
  next.step = s.step + 1;
  return next;
}

double convergence_measure(const LossPair& p, double gamma) {
  check_loss_pair(p);
  return p.loss_real + std::abs(gamma * p.loss_real - p.loss_fake);
}

std::vector<ConvergenceRecord> replay_log(const std::vector<LossLogRow>& rows,
                                          double gamma, double sigma,
                                          double lambda_k, double k0) {
  require(!rows.empty(), Status::kInvalidArgument, "replay_log: empty input");
  std::vector<ConvergenceRecord> out(rows.size());
  std::vector<double> raw(rows.size());
  EquilibriumState state{k0, gamma, lambda_k, 0};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out[i].step = rows[i].step;
    out[i].loss_real = rows[i].pair.loss_real;
    out[i].loss_fake = rows[i].pair.loss_fake;
    out[i].k = state.k;
    out[i].m_raw = convergence_measure(rows[i].pair, gamma);
    raw[i] = out[i].m_raw;
    state = update_k(state, rows[i].pair);
  }
  const std::vector<double> smooth = gaussian_smooth_series(raw, sigma);
  for (std::size_t i = 0; i < rows.size(); ++i) out[i].m_smooth = smooth[i];
  return out;
}

namespace {

constexpr const char* kLossHeader = "step,loss_real,loss_fake";
constexpr const char* kReplayHeader = "step,m_raw,m_smooth,k";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ls(line);
  std::string f;
  while (std::getline(ls, f, ',')) fields.push_back(f);
  return fields;
}

}  // namespace

std::string encode_loss_log(const std::vector<LossLogRow>& rows) {
  std::string out(kLossHeader);
  out += '\n';
  for (const LossLogRow& r : rows) {
    out += std::to_string(r.step) + ',' + format_double(r.pair.loss_real) + ',' +
           format_double(r.pair.loss_fake) + '\n';
  }
  return out;
}

std::vector<LossLogRow> decode_loss_log(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), Status::kInvalidArgument,
          "loss log: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == kLossHeader, Status::kInvalidArgument,
          "loss log: line 1: expected header '" + std::string(kLossHeader) + "'");
  std::vector<LossLogRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    require(fields.size() == 3, Status::kInvalidArgument,
            "loss log: line " + std::to_string(lineno) + ": want 3 fields");
    LossLogRow r;
    try {
      r.step = std::stoull(fields[0]);
      r.pair.loss_real = std::stod(fields[1]);
      r.pair.loss_fake = std::stod(fields[2]);
    } catch (const std::exception&) {
      fail(Status::kInvalidArgument,
           "loss log: line " + std::to_string(lineno) + ": bad number");
    }
    try {
      check_loss_pair(r.pair);
    } catch (const Error& e) {
      fail(Status::kInvalidArgument, "loss log: line " + std::to_string(lineno) +
                                         ": " + e.what());
    }
    rows.push_back(r);
  }
  return rows;
}

void write_loss_log(const std::string& path, const std::vector<LossLogRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  require(f.is_open(), Status::kIoError, "cannot open for writing: " + path);
  f << encode_loss_log(rows);
  require(f.good(), Status::kIoError, "short write: " + path);
}

std::vector<LossLogRow> read_loss_log(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.is_open(), Status::kIoError, "cannot open: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return decode_loss_log(ss.str());
}

std::string encode_replay_csv(const std::vector<ConvergenceRecord>& records) {
  std::string out(kReplayHeader);
  out += '\n';
  for (const ConvergenceRecord& r : records) {
    out += std::to_string(r.step) + ',' + format_double(r.m_raw) + ',' +
           format_double(r.m_smooth) + ',' + format_double(r.k) + '\n';
  }
  return out;
}

void write_replay_csv(const std::string& path,
                      const std::vector<ConvergenceRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  require(f.is_open(), Status::kIoError, "cannot open for writing: " + path);
  f << encode_replay_csv(records);
  require(f.good(), Status::kIoError, "short write: " + path);
}

}  // namespace iqg
