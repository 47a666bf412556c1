#pragma once

#include <cstdint>
#include <string_view>

namespace retro {

// Fixed 64-bit mixing (splitmix64 finalizer). All feature hashing goes
// through these so results are identical across platforms and runs;
// std::hash is never used for anything persisted or compared.
constexpr std::uint64_t kHashSeed = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ mix64(v));
}

inline std::uint64_t hash_bytes(std::string_view s, std::uint64_t seed = kHashSeed) {
  std::uint64_t h = seed;
  for (unsigned char c : s)
    h = hash_combine(h, c);
  return hash_combine(h, static_cast<std::uint64_t>(s.size()));
}

}  // namespace retro
