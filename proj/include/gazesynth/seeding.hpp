#pragma once

#include <cstdint>
#include <string_view>

namespace gazesynth {

/// FNV-1a, 64-bit. Stable across platforms and standard libraries.
constexpr std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept {
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-item seed from (master, item id, stage). Independent of scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view id, std::string_view stage) noexcept {
  std::uint64_t h = splitmix64(master);
  h = fnv1a(id, h);
  h = fnv1a("\x1f", h);
  h = fnv1a(stage, h);
  return splitmix64(h);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::string_view stage) noexcept {
  return splitmix64(derive_seed(master, stage, "index") ^ splitmix64(index));
}

}  // namespace gazesynth
