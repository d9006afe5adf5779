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

#include "trajpred/autodiff/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace trajpred::ad
{

namespace
{

constexpr char kMagic[8] = {'T', 'P', 'P', 'A', 'R', 'A', 'M', 'S'};
constexpr uint32_t kVersion = 1;

void put_u32(std::string & out, uint32_t v)
{
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

void put_f64(std::string & out, double v)
{
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  }
}

class Reader
{
public:
  explicit Reader(const std::string & bytes) : bytes_(bytes) {}

  uint32_t u32()
  {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  double f64()
  {
    need(8);
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
      bits |= static_cast<uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  std::string str(size_t len)
  {
    need(len);
    std::string s = bytes_.substr(pos_, len);
    pos_ += len;
    return s;
  }

private:
  void need(size_t n)
  {
    if (pos_ + n > bytes_.size()) {
      throw std::runtime_error("checkpoint: truncated file");
    }
  }

  const std::string & bytes_;
  size_t pos_ = 0;
};

}  // namespace

std::string checkpoint_bytes(std::span<const Parameter * const> params)
{
  std::string out(kMagic, sizeof(kMagic));
  put_u32(out, kVersion);
  put_u32(out, static_cast<uint32_t>(params.size()));
  for (const Parameter * p : params) {
    put_u32(out, static_cast<uint32_t>(p->name.size()));
    out += p->name;
    put_u32(out, static_cast<uint32_t>(p->value.shape.size()));
    for (int d : p->value.shape) {
      put_u32(out, static_cast<uint32_t>(d));
    }
    for (double v : p->value.data) {
      put_f64(out, v);
    }
  }
  return out;
}

void save_checkpoint(std::span<const Parameter * const> params, const std::string & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write checkpoint: " + path);
  }
  const std::string bytes = checkpoint_bytes(params);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("checkpoint write failed: " + path);
  }
}

std::vector<Parameter> parse_checkpoint(const std::string & bytes)
{
  Reader r(bytes);
  if (r.str(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic))) {
    throw std::runtime_error("checkpoint: bad magic");
  }
  const uint32_t version = r.u32();
  if (version != kVersion) {
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
  }
  const uint32_t count = r.u32();
  std::vector<Parameter> params;
  params.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    Parameter p;
    p.name = r.str(r.u32());
    const uint32_t rank = r.u32();
    std::vector<int> shape(rank);
    for (uint32_t d = 0; d < rank; ++d) {
      shape[d] = static_cast<int>(r.u32());
    }
    const int n = shape_size(shape);
    std::vector<double> data(n);
    for (int j = 0; j < n; ++j) {
      data[j] = r.f64();
    }
    p.value = Tensor(std::move(shape), std::move(data));
    params.push_back(std::move(p));
  }
  return params;
}

std::vector<Parameter> load_checkpoint(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open checkpoint: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

void load_into(std::span<Parameter * const> params, const std::vector<Parameter> & loaded)
{
  for (Parameter * p : params) {
    const Parameter * found = nullptr;
    for (const Parameter & candidate : loaded) {
      if (candidate.name == p->name) {
        found = &candidate;
        break;
      }
    }
    if (found == nullptr) {
      throw std::runtime_error("checkpoint: missing parameter \"" + p->name + "\"");
    }
    if (found->value.shape != p->value.shape) {
      throw std::runtime_error(
        "checkpoint: shape mismatch for \"" + p->name + "\": " + found->value.shape_str() +
        " vs " + p->value.shape_str());
    }
    p->value = found->value;
  }
}

}  // namespace trajpred::ad
