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

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "core/image.hpp"

namespace iqg {

namespace {

std::uint8_t quantize8(double v) {
  // Round-half-up to the nearest 8-bit level.
  const double q = std::floor(v * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::min(255.0, std::max(0.0, q)));
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

Image from_bytes(int width, int height, int channels,
                 const std::vector<std::uint8_t>& bytes) {
  Image img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.data.resize(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) img.data[i] = bytes[i] / 255.0;
  return img;
}

// ---- PNG ----

Image load_png(std::FILE* f, const std::string& path) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  require(png != nullptr, Status::kIoError, "png: allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(Status::kIoError, "png: allocation failed");
  }
  std::vector<std::uint8_t> bytes;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Status::kIoError, "png: failed to decode " + path);
  }
  png_init_io(png, f);
  png_read_info(png, info);

  const png_byte color_type = png_get_color_type(png, info);
  const png_byte bit_depth = png_get_bit_depth(png, info);
  if (bit_depth == 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Status::kUnsupported, "png: 16-bit images are not supported: " + path);
  }
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
    png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS))
    png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));
  const int channels = png_get_channels(png, info);
  if (width <= 0 || height <= 0 || (channels != 1 && channels != 3)) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Status::kUnsupported, "png: unsupported layout in " + path);
  }

  bytes.resize(static_cast<std::size_t>(width) * height * channels);
  rows.resize(height);
  for (int y = 0; y < height; ++y)
    rows[y] = bytes.data() + static_cast<std::size_t>(y) * width * channels;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return from_bytes(width, height, channels, bytes);
}

void save_png(const Image& img, const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  require(f != nullptr, Status::kIoError, "cannot open for writing: " + path);
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  require(png != nullptr, Status::kIoError, "png: allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(Status::kIoError, "png: allocation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(Status::kIoError, "png: failed to encode " + path);
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, img.width, img.height, 8,
               img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width) * img.channels);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        row[static_cast<std::size_t>(x) * img.channels + c] =
            quantize8(img.at(y, x, c));
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

// ---- PPM / PGM ----

// Header parsing per the netpbm convention: tokens separated by whitespace,
// '#' starts a comment running to end of line.
struct PnmReader {
  const std::uint8_t* p;
  const std::uint8_t* end;

  void skip_space() {
    while (p < end) {
      if (*p == '#') {
        while (p < end && *p != '\n') ++p;
      } else if (std::isspace(*p)) {
        ++p;
      } else {
        break;
      }
    }
  }

  int read_int() {
    skip_space();
    require(p < end && std::isdigit(*p), Status::kIoError, "pnm: bad header");
    long v = 0;
    while (p < end && std::isdigit(*p)) {
      v = v * 10 + (*p - '0');
      require(v <= 1 << 30, Status::kIoError, "pnm: header value too large");
      ++p;
    }
    return static_cast<int>(v);
  }
};

}  // namespace

std::vector<std::uint8_t> encode_pnm(const Image& img) {
  check_image(img, "encode_pnm");
  std::string header = img.channels == 3 ? "P6\n" : "P5\n";
  header += std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + img.data.size());
  for (double v : img.data) out.push_back(quantize8(v));
  return out;
}

Image decode_pnm(const std::uint8_t* bytes, std::size_t size) {
  require(size >= 2, Status::kIoError, "pnm: truncated file");
  require(bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'),
          Status::kUnsupported, "pnm: only binary P5/P6 supported");
  const int channels = bytes[1] == '6' ? 3 : 1;
  PnmReader r{bytes + 2, bytes + size};
  const int width = r.read_int();
  const int height = r.read_int();
  const int maxval = r.read_int();
  require(width > 0 && height > 0, Status::kIoError, "pnm: zero dimension");
  require(maxval == 255, Status::kUnsupported, "pnm: maxval must be 255");
  // Exactly one whitespace byte separates the header from the raster.
  require(r.p < r.end && std::isspace(*r.p), Status::kIoError, "pnm: bad header");
  ++r.p;
  const std::size_t need = static_cast<std::size_t>(width) * height * channels;
  require(static_cast<std::size_t>(r.end - r.p) >= need, Status::kIoError,
          "pnm: truncated raster");
  return from_bytes(width, height, channels,
                    std::vector<std::uint8_t>(r.p, r.p + need));
}

Image load_image(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  require(f != nullptr, Status::kIoError, "cannot open: " + path);
  std::uint8_t magic[8] = {0};
  const std::size_t got = std::fread(magic, 1, sizeof(magic), f.get());
  require(got >= 2, Status::kIoError, "cannot read: " + path);
  std::rewind(f.get());

  Image img;
  if (png_sig_cmp(magic, 0, got) == 0) {
    img = load_png(f.get(), path);
  } else if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) {
    std::fseek(f.get(), 0, SEEK_END);
    const long sz = std::ftell(f.get());
    std::rewind(f.get());
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(sz));
    require(std::fread(bytes.data(), 1, bytes.size(), f.get()) == bytes.size(),
            Status::kIoError, "cannot read: " + path);
    img = decode_pnm(bytes.data(), bytes.size());
  } else {
    fail(Status::kUnsupported, "unsupported image format: " + path);
  }
  check_image(img, path.c_str());
  return img;
}

void save_image(const Image& img, const std::string& path) {
  check_image(img, "save_image");
  const auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == "png") {
    save_png(img, path);
  } else if (ext == "ppm" || ext == "pgm") {
    const std::vector<std::uint8_t> bytes = encode_pnm(img);
    FilePtr f(std::fopen(path.c_str(), "wb"));
    require(f != nullptr, Status::kIoError, "cannot open for writing: " + path);
    require(std::fwrite(bytes.data(), 1, bytes.size(), f.get()) == bytes.size(),
            Status::kIoError, "short write: " + path);
  } else {
    fail(Status::kUnsupported, "unsupported image extension: " + path);
  }
}

}  // namespace iqg
