// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/token_source.hpp"

namespace oidclab {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

TokenSource::TokenSource(std::uint64_t seed, std::string_view stream)
    : key_(splitmix64(seed) ^ fnv1a(stream)) {}

std::uint64_t TokenSource::next_u64() {
  return splitmix64(key_ + 0x632be59bd9b4e019ULL * ++counter_);
}

std::string TokenSource::next_hex32() {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(32, '0');
  for (int half = 0; half < 2; ++half) {
    std::uint64_t v = next_u64();
    for (int i = 15; i >= 0; --i) {
      out[half * 16 + i] = kHex[v & 0xf];
      v >>= 4;
    }
  }
  return out;
}

}  // namespace oidclab
