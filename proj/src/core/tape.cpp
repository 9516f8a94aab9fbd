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

#include "core/tape.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace iqg::ad {

namespace {

inline int clampi(int i, int n) { return std::min(n - 1, std::max(0, i)); }

}  // namespace

void Tape::check_id(VarId id) const {
  require(id >= 0 && static_cast<std::size_t>(id) < nodes_.size(),
          Status::kInvalidArgument, "tape: bad var id");
}

Tape::VarId Tape::emplace(Tensor value, const char* name,
                          std::function<void(Tape&)> back) {
  if (!all_finite(value))
    fail(Status::kNumericError, std::string("non-finite value in op '") + name + "'");
  nodes_.push_back(Node{std::move(value), Tensor{}, false, name, std::move(back)});
  return static_cast<VarId>(nodes_.size() - 1);
}

Tensor& Tape::grad_of(VarId id) {
  Node& n = nodes_[id];
  if (n.grad.v.empty()) {
    n.grad.shape = n.value.shape;
    n.grad.v.assign(n.value.numel(), 0.0);
  }
  n.reached = true;
  return n.grad;
}

Tape::VarId Tape::input(Tensor value, const char* name) {
  return emplace(std::move(value), name, nullptr);
}

Tape::VarId Tape::param(const Tensor& value, const char* name) {
  return emplace(value, name, nullptr);
}

Tape::VarId Tape::add(VarId a, VarId b) {
  check_id(a);
  check_id(b);
  require(nodes_[a].value.same_shape(nodes_[b].value), Status::kInvalidArgument,
          "add: shape mismatch");
  Tensor out = nodes_[a].value;
  const Tensor& vb = nodes_[b].value;
  for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] += vb.v[i];
  VarId id = emplace(std::move(out), "add", nullptr);
  nodes_[id].back = [id, a, b](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    Tensor& ga = t.grad_of(a);
    Tensor& gb = t.grad_of(b);
    for (std::size_t i = 0; i < g.numel(); ++i) {
      ga.v[i] += g.v[i];
      gb.v[i] += g.v[i];
    }
  };
  return id;
}

Tape::VarId Tape::sub(VarId a, VarId b) {
  check_id(a);
  check_id(b);
  require(nodes_[a].value.same_shape(nodes_[b].value), Status::kInvalidArgument,
          "sub: shape mismatch");
  Tensor out = nodes_[a].value;
  const Tensor& vb = nodes_[b].value;
  for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] -= vb.v[i];
  VarId id = emplace(std::move(out), "sub", nullptr);
  nodes_[id].back = [id, a, b](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    Tensor& ga = t.grad_of(a);
    Tensor& gb = t.grad_of(b);
    for (std::size_t i = 0; i < g.numel(); ++i) {
      ga.v[i] += g.v[i];
      gb.v[i] -= g.v[i];
    }
  };
  return id;
}

Tape::VarId Tape::mul(VarId a, VarId b) {
  check_id(a);
  check_id(b);
  require(nodes_[a].value.same_shape(nodes_[b].value), Status::kInvalidArgument,
          "mul: shape mismatch");
  Tensor out = nodes_[a].value;
  const Tensor& vb = nodes_[b].value;
  for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] *= vb.v[i];
  VarId id = emplace(std::move(out), "mul", nullptr);
  nodes_[id].back = [id, a, b](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    const Tensor& va = t.nodes_[a].value;
    const Tensor& vb2 = t.nodes_[b].value;
    Tensor& ga = t.grad_of(a);
    Tensor& gb = t.grad_of(b);
    for (std::size_t i = 0; i < g.numel(); ++i) {
      ga.v[i] += g.v[i] * vb2.v[i];
      gb.v[i] += g.v[i] * va.v[i];
    }
  };
  return id;
}

Tape::VarId Tape::div(VarId a, VarId b) {
  check_id(a);
  check_id(b);
  require(nodes_[a].value.same_shape(nodes_[b].value), Status::kInvalidArgument,
          "div: shape mismatch");
  Tensor out = nodes_[a].value;
  const Tensor& vb = nodes_[b].value;
  for (std::size_t i = 0; i < out.numel(); ++i) out.v[i] /= vb.v[i];
  VarId id = emplace(std::move(out), "div", nullptr);
  nodes_[id].back = [id, a, b](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    const Tensor& vout = t.nodes_[id].value;
    const Tensor& vb2 = t.nodes_[b].value;
    Tensor& ga = t.grad_of(a);
    Tensor& gb = t.grad_of(b);
    for (std::size_t i = 0; i < g.numel(); ++i) {
      ga.v[i] += g.v[i] / vb2.v[i];
      gb.v[i] -= g.v[i] * vout.v[i] / vb2.v[i];
    }
  };
  return id;
}

Tape::VarId Tape::scale(VarId a, double s) {
  check_id(a);
  Tensor out = nodes_[a].value;
  for (double& x : out.v) x *= s;
  VarId id = emplace(std::move(out), "scale", nullptr);
  nodes_[id].back = [id, a, s](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    Tensor& ga = t.grad_of(a);
    for (std::size_t i = 0; i < g.numel(); ++i) ga.v[i] += g.v[i] * s;
  };
  return id;
}

Tape::VarId Tape::add_scalar(VarId a, double s) {
  check_id(a);
  Tensor out = nodes_[a].value;
  for (double& x : out.v) x += s;
  VarId id = emplace(std::move(out), "add_scalar", nullptr);
  nodes_[id].back = [id, a](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    Tensor& ga = t.grad_of(a);
    for (std::size_t i = 0; i < g.numel(); ++i) ga.v[i] += g.v[i];
  };
  return id;
}

Tape::VarId Tape::abs(VarId a) {
  check_id(a);
  Tensor out = nodes_[a].value;
  for (double& x : out.v) x = std::fabs(x);
  VarId id = emplace(std::move(out), "abs", nullptr);
  nodes_[id].back = [id, a](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    const Tensor& va = t.nodes_[a].value;
    Tensor& ga = t.grad_of(a);
    for (std::size_t i = 0; i < g.numel(); ++i) {
      const double x = va.v[i];
      if (x > 0.0)
        ga.v[i] += g.v[i];
      else if (x < 0.0)
        ga.v[i] -= g.v[i];
      // subgradient 0 exactly at the kink
    }
  };
  return id;
}

Tape::VarId Tape::sqrt_shifted(VarId a, double eps) {
  check_id(a);
  require(eps > 0.0, Status::kInvalidArgument, "sqrt_shifted: eps must be > 0");
  Tensor out = nodes_[a].value;
  for (double& x : out.v) x = std::sqrt(x + eps);
  VarId id = emplace(std::move(out), "sqrt_shifted", nullptr);
  nodes_[id].back = [id, a](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    const Tensor& vout = t.nodes_[id].value;
    Tensor& ga = t.grad_of(a);
    for (std::size_t i = 0; i < g.numel(); ++i)
      ga.v[i] += g.v[i] * 0.5 / vout.v[i];
  };
  return id;
}

Tape::VarId Tape::elu(VarId a) {
  check_id(a);
  Tensor out = nodes_[a].value;
  for (double& x : out.v) x = x > 0.0 ? x : std::expm1(x);
  VarId id = emplace(std::move(out), "elu", nullptr);
  nodes_[id].back = [id, a](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    const Tensor& va = t.nodes_[a].value;
    const Tensor& vout = t.nodes_[id].value;
    Tensor& ga = t.grad_of(a);
    for (std::size_t i = 0; i < g.numel(); ++i) {
      ga.v[i] += g.v[i] * (va.v[i] > 0.0 ? 1.0 : vout.v[i] + 1.0);
    }
  };
  return id;
}

Tape::VarId Tape::logistic(VarId a) {
  check_id(a);
  Tensor out = nodes_[a].value;
  for (double& x : out.v) x = 1.0 / (1.0 + std::exp(-x));
  VarId id = emplace(std::move(out), "logistic", nullptr);
  nodes_[id].back = [id, a](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    const Tensor& vout = t.nodes_[id].value;
    Tensor& ga = t.grad_of(a);
    for (std::size_t i = 0; i < g.numel(); ++i) {
      const double s = vout.v[i];
      ga.v[i] += g.v[i] * s * (1.0 - s);
    }
  };
  return id;
}

Tape::VarId Tape::mean_all(VarId a) {
  check_id(a);
  const Tensor& va = nodes_[a].value;
  Tensor out({1});
  double acc = 0.0;
  for (double x : va.v) acc += x;
  out.v[0] = acc / static_cast<double>(va.numel());
  VarId id = emplace(std::move(out), "mean_all", nullptr);
  nodes_[id].back = [id, a](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    Tensor& ga = t.grad_of(a);
    const double w = g.v[0] / static_cast<double>(ga.numel());
    for (std::size_t i = 0; i < ga.numel(); ++i) ga.v[i] += w;
  };
  return id;
}

Tape::VarId Tape::reshape(VarId a, std::vector<int> shape) {
  check_id(a);
  require(Tensor::numel_of(shape) == nodes_[a].value.numel(),
          Status::kInvalidArgument, "reshape: element count mismatch");
  Tensor out = nodes_[a].value;
  out.shape = std::move(shape);
  VarId id = emplace(std::move(out), "reshape", nullptr);
  nodes_[id].back = [id, a](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    Tensor& ga = t.grad_of(a);
    for (std::size_t i = 0; i < g.numel(); ++i) ga.v[i] += g.v[i];
  };
  return id;
}

Tape::VarId Tape::dense(VarId x, VarId w, VarId b) {
  check_id(x);
  check_id(w);
  check_id(b);
  const Tensor& vx = nodes_[x].value;
  const Tensor& vw = nodes_[w].value;
  const Tensor& vb = nodes_[b].value;
  require(vx.rank() == 2 && vw.rank() == 2 && vb.rank() == 1,
          Status::kInvalidArgument, "dense: bad ranks");
  const int n = vx.dim(0), fin = vx.dim(1), fout = vw.dim(1);
  require(vw.dim(0) == fin && vb.dim(0) == fout, Status::kInvalidArgument,
          "dense: shape mismatch");
  Tensor out({n, fout});
  for (int i = 0; i < n; ++i) {
    double* orow = &out.v[static_cast<std::size_t>(i) * fout];
    for (int fo = 0; fo < fout; ++fo) orow[fo] = vb.v[fo];
    const double* xrow = &vx.v[static_cast<std::size_t>(i) * fin];
    for (int fi = 0; fi < fin; ++fi) {
      const double a = xrow[fi];
      const double* wrow = &vw.v[static_cast<std::size_t>(fi) * fout];
      for (int fo = 0; fo < fout; ++fo) orow[fo] += a * wrow[fo];
    }
  }
  VarId id = emplace(std::move(out), "dense", nullptr);
  nodes_[id].back = [id, x, w, b, n, fin, fout](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    const Tensor& vx2 = t.nodes_[x].value;
    const Tensor& vw2 = t.nodes_[w].value;
    Tensor& gx = t.grad_of(x);
    Tensor& gw = t.grad_of(w);
    Tensor& gb = t.grad_of(b);
    for (int i = 0; i < n; ++i) {
      const double* grow = &g.v[static_cast<std::size_t>(i) * fout];
      const double* xrow = &vx2.v[static_cast<std::size_t>(i) * fin];
      double* gxrow = &gx.v[static_cast<std::size_t>(i) * fin];
      for (int fo = 0; fo < fout; ++fo) gb.v[fo] += grow[fo];
      for (int fi = 0; fi < fin; ++fi) {
        const double* wrow = &vw2.v[static_cast<std::size_t>(fi) * fout];
        double* gwrow = &gw.v[static_cast<std::size_t>(fi) * fout];
        const double a = xrow[fi];
        double acc = 0.0;
        for (int fo = 0; fo < fout; ++fo) {
          const double gg = grow[fo];
          acc += gg * wrow[fo];
          gwrow[fo] += a * gg;
        }
        gxrow[fi] += acc;
      }
    }
  };
  return id;
}

Tape::VarId Tape::conv3x3(VarId x, VarId k, VarId b, int stride, Pad pad) {
  check_id(x);
  check_id(k);
  const Tensor& vx = nodes_[x].value;
  const Tensor& vk = nodes_[k].value;
  require(vx.rank() == 4, Status::kInvalidArgument, "conv3x3: input rank != 4");
  require(vk.rank() == 4 && vk.dim(0) == 3 && vk.dim(1) == 3,
          Status::kInvalidArgument, "conv3x3: kernel must be (3,3,Ci,Co)");
  require(stride == 1 || stride == 2, Status::kInvalidArgument,
          "conv3x3: stride must be 1 or 2");
  const int n = vx.dim(0), h = vx.dim(1), w = vx.dim(2), ci = vx.dim(3);
  require(vk.dim(2) == ci, Status::kInvalidArgument, "conv3x3: channel mismatch");
  const int co = vk.dim(3);
  if (b != kNoVar) {
    check_id(b);
    require(nodes_[b].value.rank() == 1 && nodes_[b].value.dim(0) == co,
            Status::kInvalidArgument, "conv3x3: bias shape");
  }
  const int ho = (h + stride - 1) / stride;
  const int wo = (w + stride - 1) / stride;
  const bool replicate = pad == Pad::kReplicate;

  Tensor out({n, ho, wo, co});
  for (int ni = 0; ni < n; ++ni) {
    for (int oy = 0; oy < ho; ++oy) {
      for (int ox = 0; ox < wo; ++ox) {
        double* orow = &out.v[out.at4(ni, oy, ox, 0)];
        if (b != kNoVar) {
          const Tensor& vb = nodes_[b].value;
          for (int c = 0; c < co; ++c) orow[c] = vb.v[c];
        }
        const int cy = oy * stride, cx = ox * stride;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            int sy = cy + dy, sx = cx + dx;
            if (replicate) {
              sy = clampi(sy, h);
              sx = clampi(sx, w);
            } else if (sy < 0 || sy >= h || sx < 0 || sx >= w) {
              continue;
            }
            const double* xrow = &vx.v[vx.at4(ni, sy, sx, 0)];
            const double* krow =
                &vk.v[((static_cast<std::size_t>(dy + 1) * 3 + (dx + 1)) * ci) * co];
            for (int c0 = 0; c0 < ci; ++c0) {
              const double a = xrow[c0];
              const double* kr = krow + static_cast<std::size_t>(c0) * co;
              for (int c1 = 0; c1 < co; ++c1) orow[c1] += a * kr[c1];
            }
          }
        }
      }
    }
  }
  VarId id = emplace(std::move(out), "conv3x3", nullptr);
  nodes_[id].back = [id, x, k, b, stride, replicate, n, h, w, ci, co, ho,
                     wo](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    const Tensor& vx2 = t.nodes_[x].value;
    const Tensor& vk2 = t.nodes_[k].value;
    Tensor& gx = t.grad_of(x);
    Tensor& gk = t.grad_of(k);
    Tensor* gb = b != kNoVar ? &t.grad_of(b) : nullptr;
    for (int ni = 0; ni < n; ++ni) {
      for (int oy = 0; oy < ho; ++oy) {
        for (int ox = 0; ox < wo; ++ox) {
          const double* grow = &g.v[g.at4(ni, oy, ox, 0)];
          if (gb) {
            for (int c = 0; c < co; ++c) gb->v[c] += grow[c];
          }
          const int cy = oy * stride, cx = ox * stride;
          for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
              int sy = cy + dy, sx = cx + dx;
              if (replicate) {
                sy = clampi(sy, h);
                sx = clampi(sx, w);
              } else if (sy < 0 || sy >= h || sx < 0 || sx >= w) {
                continue;
              }
              const double* xrow = &vx2.v[vx2.at4(ni, sy, sx, 0)];
              double* gxrow = &gx.v[vx2.at4(ni, sy, sx, 0)];
              const std::size_t kbase =
                  (static_cast<std::size_t>(dy + 1) * 3 + (dx + 1)) * ci;
              for (int c0 = 0; c0 < ci; ++c0) {
                const double* kr = &vk2.v[(kbase + c0) * co];
                double* gkr = &gk.v[(kbase + c0) * co];
                const double a = xrow[c0];
                double acc = 0.0;
                for (int c1 = 0; c1 < co; ++c1) {
                  const double gg = grow[c1];
                  acc += gg * kr[c1];
                  gkr[c1] += a * gg;
                }
                gxrow[c0] += acc;
              }
            }
          }
        }
      }
    }
  };
  return id;
}

Tape::VarId Tape::upsample2(VarId a) {
  check_id(a);
  const Tensor& va = nodes_[a].value;
  require(va.rank() == 4, Status::kInvalidArgument, "upsample2: rank != 4");
  const int n = va.dim(0), h = va.dim(1), w = va.dim(2), c = va.dim(3);
  Tensor out({n, 2 * h, 2 * w, c});
  for (int ni = 0; ni < n; ++ni)
    for (int y = 0; y < 2 * h; ++y)
      for (int x = 0; x < 2 * w; ++x) {
        const double* src = &va.v[va.at4(ni, y / 2, x / 2, 0)];
        double* dst = &out.v[out.at4(ni, y, x, 0)];
        for (int cc = 0; cc < c; ++cc) dst[cc] = src[cc];
      }
  VarId id = emplace(std::move(out), "upsample2", nullptr);
  nodes_[id].back = [id, a, n, h, w, c](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    Tensor& ga = t.grad_of(a);
    for (int ni = 0; ni < n; ++ni)
      for (int y = 0; y < 2 * h; ++y)
        for (int x = 0; x < 2 * w; ++x) {
          const double* src = &g.v[g.at4(ni, y, x, 0)];
          double* dst = &ga.v[ga.at4(ni, y / 2, x / 2, 0)];
          for (int cc = 0; cc < c; ++cc) dst[cc] += src[cc];
        }
  };
  return id;
}

Tape::VarId Tape::channel_matrix(VarId a, const double m[3][3]) {
  check_id(a);
  const Tensor& va = nodes_[a].value;
  require(va.rank() == 4 && va.dim(3) == 3, Status::kInvalidArgument,
          "channel_matrix: input must be (N,H,W,3)");
  double mm[9];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) mm[r * 3 + c] = m[r][c];
  Tensor out(va.shape);
  const std::size_t pixels = va.numel() / 3;
  for (std::size_t p = 0; p < pixels; ++p) {
    const double* in = &va.v[p * 3];
    double* o = &out.v[p * 3];
    for (int r = 0; r < 3; ++r)
      o[r] = mm[r * 3] * in[0] + mm[r * 3 + 1] * in[1] + mm[r * 3 + 2] * in[2];
  }
  VarId id = emplace(std::move(out), "channel_matrix", nullptr);
  std::vector<double> mv(mm, mm + 9);
  nodes_[id].back = [id, a, mv](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    Tensor& ga = t.grad_of(a);
    const std::size_t pixels = g.numel() / 3;
    for (std::size_t p = 0; p < pixels; ++p) {
      const double* gr = &g.v[p * 3];
      double* go = &ga.v[p * 3];
      for (int c = 0; c < 3; ++c)
        go[c] += mv[c] * gr[0] + mv[3 + c] * gr[1] + mv[6 + c] * gr[2];
    }
  };
  return id;
}

Tape::VarId Tape::channel_slice(VarId a, int channel) {
  check_id(a);
  const Tensor& va = nodes_[a].value;
  require(va.rank() == 4, Status::kInvalidArgument, "channel_slice: rank != 4");
  const int c = va.dim(3);
  require(channel >= 0 && channel < c, Status::kInvalidArgument,
          "channel_slice: channel out of range");
  Tensor out({va.dim(0), va.dim(1), va.dim(2), 1});
  const std::size_t pixels = out.numel();
  for (std::size_t p = 0; p < pixels; ++p) out.v[p] = va.v[p * c + channel];
  VarId id = emplace(std::move(out), "channel_slice", nullptr);
  nodes_[id].back = [id, a, c, channel](Tape& t) {
    const Tensor& g = t.nodes_[id].grad;
    Tensor& ga = t.grad_of(a);
    for (std::size_t p = 0; p < g.numel(); ++p) ga.v[p * c + channel] += g.v[p];
  };
  return id;
}

void Tape::backward(VarId root) {
  check_id(root);
  require(nodes_[root].value.numel() == 1, Status::kInvalidArgument,
          "backward: root must be scalar");
  for (Node& n : nodes_) {
    n.reached = false;
    if (!n.grad.v.empty()) std::fill(n.grad.v.begin(), n.grad.v.end(), 0.0);
  }
  grad_of(root).v[0] = 1.0;
  for (VarId id = root; id >= 0; --id) {
    Node& n = nodes_[id];
    if (n.reached && n.back) n.back(*this);
  }
  for (const Node& n : nodes_) {
    if (n.reached && !all_finite(n.grad))
      fail(Status::kNumericError,
           std::string("non-finite gradient in op '") + n.name + "'");
  }
}

}  // namespace iqg::ad
