#pragma once

// Seeded random streams.
//
// Every stochastic routine draws from a stream derived from a user seed, a
// stream name, and a tuple of task indices (restart, replicate, ...). Streams
// are independent of scheduling, so parallel and serial runs consume the same
// random numbers per task.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace signedmeso::rng {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// 64-bit seed of the named stream `name` at the given task indices.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view name,
                                    std::initializer_list<std::uint64_t> indices = {}) noexcept {
  std::uint64_t h = splitmix64(seed ^ fnv1a(name));
  for (std::uint64_t i : indices) h = splitmix64(h ^ splitmix64(i + 1));
  return h;
}

/// Engine for the named stream `name` at the given task indices.
inline Engine stream(std::uint64_t seed, std::string_view name,
                     std::initializer_list<std::uint64_t> indices = {}) {
  const std::uint64_t h = derive_seed(seed, name, indices);
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return Engine(seq);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). Rejection sampling, so the result does not
/// depend on the standard library's distribution implementation.
inline std::uint64_t uniform_index(Engine& gen, std::uint64_t n) {
  const std::uint64_t limit = Engine::max() - Engine::max() % n;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % n;
}

/// Fisher-Yates shuffle.
template <typename T>
void shuffle(std::span<T> items, Engine& gen) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(gen, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace signedmeso::rng
