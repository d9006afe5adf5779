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

#ifndef TRAJPRED_HASH_HPP_
#define TRAJPRED_HASH_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace trajpred
{

/// FNV-1a over a byte string. Stable across platforms; used for dataset and
/// config fingerprints, not for security.
inline uint64_t fnv1a64(std::string_view bytes)
{
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string to_hex(uint64_t v)
{
  static const char * digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

inline std::string hash_hex(std::string_view bytes) { return to_hex(fnv1a64(bytes)); }

}  // namespace trajpred

#endif  // TRAJPRED_HASH_HPP_
