// Copyright 2026 The trajpred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal PNG emitter: 8-bit RGB, filter 0, stored (uncompressed) deflate
// blocks. Self-contained so output bytes are stable regardless of any zlib
// version, which the determinism contract relies on.

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "trajpred/raster.hpp"

namespace trajpred
{

namespace
{

uint32_t crc32_png(const uint8_t * data, size_t len)
{
  static uint32_t table[256];
  static bool init = false;
  if (!init) {
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t c = i;
      for (int k = 0; k < 8; ++k) {
        c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
      }
      table[i] = c;
    }
    init = true;
  }
  uint32_t crc = 0xffffffffu;
  for (size_t i = 0; i < len; ++i) {
    crc = table[(crc ^ data[i]) & 0xff] ^ (crc >> 8);
  }
  return crc ^ 0xffffffffu;
}

uint32_t adler32(const std::vector<uint8_t> & data)
{
  uint32_t a = 1;
  uint32_t b = 0;
  for (uint8_t byte : data) {
    a = (a + byte) % 65521u;
    b = (b + a) % 65521u;
  }
  return (b << 16) | a;
}

void push_u32_be(std::vector<uint8_t> & out, uint32_t v)
{
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void push_chunk(std::vector<uint8_t> & out, const char type[4], const std::vector<uint8_t> & data)
{
  push_u32_be(out, static_cast<uint32_t>(data.size()));
  std::vector<uint8_t> body(type, type + 4);
  body.insert(body.end(), data.begin(), data.end());
  out.insert(out.end(), body.begin(), body.end());
  push_u32_be(out, crc32_png(body.data(), body.size()));
}

std::vector<uint8_t> zlib_stored(const std::vector<uint8_t> & raw)
{
  std::vector<uint8_t> out{0x78, 0x01};
  size_t offset = 0;
  do {
    const size_t len = std::min<size_t>(raw.size() - offset, 65535);
    const bool final_block = offset + len == raw.size();
    out.push_back(final_block ? 0x01 : 0x00);
    out.push_back(static_cast<uint8_t>(len & 0xff));
    out.push_back(static_cast<uint8_t>(len >> 8));
    out.push_back(static_cast<uint8_t>(~len & 0xff));
    out.push_back(static_cast<uint8_t>((~len >> 8) & 0xff));
    out.insert(out.end(), raw.begin() + offset, raw.begin() + offset + len);
    offset += len;
  } while (offset < raw.size());
  push_u32_be(out, adler32(raw));
  return out;
}

}  // namespace

std::vector<uint8_t> raster_to_png_bytes(const Raster & raster)
{
  std::vector<uint8_t> png{0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};

  std::vector<uint8_t> ihdr;
  push_u32_be(ihdr, static_cast<uint32_t>(raster.width));
  push_u32_be(ihdr, static_cast<uint32_t>(raster.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // truecolor
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter
  ihdr.push_back(0);  // interlace
  push_chunk(png, "IHDR", ihdr);

  std::vector<uint8_t> raw;
  raw.reserve(static_cast<size_t>(raster.height) * (1 + 3 * raster.width));
  for (int r = 0; r < raster.height; ++r) {
    raw.push_back(0);  // filter type 0
    for (int c = 0; c < raster.width; ++c) {
      const double * px = raster.at(r, c);
      raw.push_back(quantize8(px[0]));
      raw.push_back(quantize8(px[1]));
      raw.push_back(quantize8(px[2]));
    }
  }
  push_chunk(png, "IDAT", zlib_stored(raw));
  push_chunk(png, "IEND", {});
  return png;
}

void raster_to_png(const Raster & raster, const std::string & path)
{
  const std::vector<uint8_t> bytes = raster_to_png_bytes(raster);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write PNG: " + path);
  }
  out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("PNG write failed: " + path);
  }
}

}  // namespace trajpred
