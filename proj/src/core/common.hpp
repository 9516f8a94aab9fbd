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

#ifndef IQGAN_CORE_COMMON_HPP_
#define IQGAN_CORE_COMMON_HPP_

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace iqg {

// Error category carried by every exception the core library throws.
// The C API maps these one-to-one onto iqg_status codes.
enum class Status : int {
  kOk = 0,
  kIoError = 1,
  kInvalidArgument = 2,
  kUnsupported = 3,
  kNumericError = 4,
  kUnreachableTarget = 5,
};

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  Status status() const noexcept { return status_; }

 private:
  Status status_;
};

[[noreturn]] inline void fail(Status status, const std::string& what) {
  throw Error(status, what);
}

inline void require(bool cond, Status status, const std::string& what) {
  if (!cond) fail(status, what);
}

// Deterministic RNG. mt19937_64 is bit-exact by the standard; the uniform
// mappings below are ours so results do not depend on libstdc++'s
// distribution internals. State round-trips through text for checkpoints.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % n;
  }

  std::string save_state() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
  }

  void load_state(const std::string& text) {
    std::istringstream is(text);
    is >> engine_;
    if (is.fail()) fail(Status::kInvalidArgument, "corrupt RNG state");
  }

 private:
  std::mt19937_64 engine_;
};

// Derives independent stream seeds from one user seed (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Locale-independent decimal formatting, 12 significant digits by default.
std::string format_double(double value, int significant_digits = 12);

// FNV-1a, used to stamp reports with a configuration fingerprint.
std::uint64_t fnv1a(const std::string& text);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace iqg

#endif  // IQGAN_CORE_COMMON_HPP_
