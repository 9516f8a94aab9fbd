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

// Checkpoint layout (version 1, little-endian):
//   magic "IQGCKPT1", u32 version
//   config fields in declaration order
//   controller state (step, k), epoch, cursor, latent RNG state text
//   named tensor table: u32 count, then per tensor
//     u32 name_len, name bytes, u32 rank, i32 dims..., f64 values...
// The table holds every parameter plus its Adam moments under
// "adam.m.<name>" / "adam.v.<name>".

#include <bit>
#include <cstring>
#include <fstream>
#include <map>

#include "core/trainer.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint codec assumes a little-endian host");

namespace iqg {

namespace {

constexpr char kMagic[8] = {'I', 'Q', 'G', 'C', 'K', 'P', 'T', '1'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
 public:
  explicit Writer(const std::string& path) : f_(path, std::ios::binary) {
    require(f_.is_open(), Status::kIoError, "cannot open for writing: " + path);
  }
  void bytes(const void* p, std::size_t n) {
    f_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  }
  template <typename T>
  void pod(T v) {
    bytes(&v, sizeof(v));
  }
  void str(const std::string& s) {
    pod<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
  void tensor(const Tensor& t) {
    pod<std::uint32_t>(static_cast<std::uint32_t>(t.shape.size()));
    for (int d : t.shape) pod<std::int32_t>(d);
    bytes(t.v.data(), t.v.size() * sizeof(double));
  }
  void close(const std::string& path) {
    f_.flush();
    require(f_.good(), Status::kIoError, "short write: " + path);
  }

 private:
  std::ofstream f_;
};

class Reader {
 public:
  explicit Reader(const std::string& path) : f_(path, std::ios::binary) {
    require(f_.is_open(), Status::kIoError, "cannot open: " + path);
  }
  void bytes(void* p, std::size_t n) {
    f_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    require(f_.gcount() == static_cast<std::streamsize>(n), Status::kInvalidArgument,
            "checkpoint: truncated file");
  }
  template <typename T>
  T pod() {
    T v;
    bytes(&v, sizeof(v));
    return v;
  }
  std::string str() {
    const std::uint32_t n = pod<std::uint32_t>();
    require(n < (1u << 20), Status::kInvalidArgument, "checkpoint: bad string");
    std::string s(n, '\0');
    bytes(s.data(), n);
    return s;
  }
  Tensor tensor() {
    const std::uint32_t rank = pod<std::uint32_t>();
    require(rank <= 8, Status::kInvalidArgument, "checkpoint: bad rank");
    std::vector<int> shape(rank);
    for (auto& d : shape) {
      d = pod<std::int32_t>();
      require(d > 0 && d < (1 << 24), Status::kInvalidArgument,
              "checkpoint: bad dimension");
    }
    Tensor t(shape);
    bytes(t.v.data(), t.v.size() * sizeof(double));
    return t;
  }

 private:
  std::ifstream f_;
};

}  // namespace

struct CheckpointCodec {
  static void save(const Trainer& tr, const std::string& path) {
    Writer w(path);
    w.bytes(kMagic, sizeof(kMagic));
    w.pod<std::uint32_t>(kFormatVersion);

    const TrainerConfig& c = tr.cfg_;
    w.pod<std::int32_t>(c.n_z);
    w.pod<std::int32_t>(c.image_size);
    w.pod<std::int32_t>(c.batch_size);
    w.pod<double>(c.lr);
    w.pod<double>(c.beta1);
    w.pod<double>(c.beta2);
    w.pod<std::int32_t>(c.lr_decay_interval);
    w.pod<double>(c.lr_decay_factor);
    w.pod<double>(c.lambda_k);
    w.pod<double>(c.k0);
    w.pod<double>(c.gamma);
    w.pod<double>(c.weights.l1);
    w.pod<double>(c.weights.gmsm);
    w.pod<double>(c.weights.chrom);
    w.pod<std::uint8_t>(c.filter == GradientFilter::kSobel ? 1 : 0);
    w.pod<std::int64_t>(c.steps);
    w.pod<std::uint64_t>(c.seed);
    w.pod<std::int32_t>(c.dataset_count);

    w.pod<std::uint64_t>(tr.equilibrium_.step);
    w.pod<double>(tr.equilibrium_.k);
    w.pod<std::uint64_t>(tr.epoch_);
    w.pod<std::uint64_t>(static_cast<std::uint64_t>(tr.cursor_));
    w.str(tr.z_rng_.save_state());

    std::vector<std::pair<std::string, const Tensor*>> table;
    auto add_params = [&table](const std::vector<NamedTensor>& params,
                               const std::vector<AdamMoments>& moments) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        table.emplace_back(params[i].name, params[i].tensor);
        if (!moments[i].m.v.empty()) {
          table.emplace_back("adam.m." + params[i].name, &moments[i].m);
          table.emplace_back("adam.v." + params[i].name, &moments[i].v);
        }
      }
    };
    add_params(tr.gen_params_, tr.gen_moments_);
    add_params(tr.disc_params_, tr.disc_moments_);

    w.pod<std::uint32_t>(static_cast<std::uint32_t>(table.size()));
    for (const auto& [name, tensor] : table) {
      w.str(name);
      w.tensor(*tensor);
    }
    w.close(path);
  }

  static std::unique_ptr<Trainer> load(const std::string& path) {
    Reader r(path);
    char magic[8];
    r.bytes(magic, sizeof(magic));
    require(std::memcmp(magic, kMagic, sizeof(kMagic)) == 0,
            Status::kInvalidArgument, "checkpoint: bad magic");
    const std::uint32_t version = r.pod<std::uint32_t>();
    require(version == kFormatVersion, Status::kInvalidArgument,
            "checkpoint: unsupported version " + std::to_string(version));

    TrainerConfig c;
    c.n_z = r.pod<std::int32_t>();
    c.image_size = r.pod<std::int32_t>();
    c.batch_size = r.pod<std::int32_t>();
    c.lr = r.pod<double>();
    c.beta1 = r.pod<double>();
    c.beta2 = r.pod<double>();
    c.lr_decay_interval = r.pod<std::int32_t>();
    c.lr_decay_factor = r.pod<double>();
    c.lambda_k = r.pod<double>();
    c.k0 = r.pod<double>();
    c.gamma = r.pod<double>();
    c.weights.l1 = r.pod<double>();
    c.weights.gmsm = r.pod<double>();
    c.weights.chrom = r.pod<double>();
    c.filter = r.pod<std::uint8_t>() ? GradientFilter::kSobel
                                     : GradientFilter::kPrewitt;
    c.steps = r.pod<std::int64_t>();
    c.seed = r.pod<std::uint64_t>();
    c.dataset_count = r.pod<std::int32_t>();

    auto trainer = std::make_unique<Trainer>(c);
    trainer->equilibrium_.step = r.pod<std::uint64_t>();
    trainer->equilibrium_.k = r.pod<double>();
    trainer->epoch_ = r.pod<std::uint64_t>();
    trainer->cursor_ = static_cast<std::size_t>(r.pod<std::uint64_t>());
    trainer->z_rng_.load_state(r.str());
    if (trainer->cursor_ > 0 || trainer->epoch_ > 0) {
      // Rebuild the current epoch's ordering; it is a function of
      // (seed, epoch) alone.
      const std::uint64_t epoch = trainer->epoch_;
      const std::size_t cursor = trainer->cursor_;
      trainer->epoch_ = epoch;
      trainer->reshuffle();
      trainer->cursor_ = cursor;
    }

    std::map<std::string, Tensor*> slots;
    for (auto& p : trainer->gen_params_) slots[p.name] = p.tensor;
    for (auto& p : trainer->disc_params_) slots[p.name] = p.tensor;
    for (std::size_t i = 0; i < trainer->gen_params_.size(); ++i) {
      slots["adam.m." + trainer->gen_params_[i].name] = &trainer->gen_moments_[i].m;
      slots["adam.v." + trainer->gen_params_[i].name] = &trainer->gen_moments_[i].v;
    }
    for (std::size_t i = 0; i < trainer->disc_params_.size(); ++i) {
      slots["adam.m." + trainer->disc_params_[i].name] =
          &trainer->disc_moments_[i].m;
      slots["adam.v." + trainer->disc_params_[i].name] =
          &trainer->disc_moments_[i].v;
    }

    const std::uint32_t count = r.pod<std::uint32_t>();
    for (std::uint32_t i = 0; i < count; ++i) {
      const std::string name = r.str();
      Tensor t = r.tensor();
      auto it = slots.find(name);
      require(it != slots.end(), Status::kInvalidArgument,
              "checkpoint: unknown tensor '" + name + "'");
      require(it->second->v.empty() || it->second->same_shape(t),
              Status::kInvalidArgument,
              "checkpoint: shape mismatch for '" + name + "'");
      *it->second = std::move(t);
    }
    return trainer;
  }
};

void Trainer::save_checkpoint(const std::string& path) const {
  CheckpointCodec::save(*this, path);
}

std::unique_ptr<Trainer> Trainer::load_checkpoint(const std::string& path) {
  return CheckpointCodec::load(path);
}

}  // namespace iqg
