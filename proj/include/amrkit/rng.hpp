#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace amrkit {

// Reproducible randomness. Every consumer draws from its own named stream:
//
//   stream_seed(seed, name) = mix64(seed ^ fnv1a64(name))
//
// where mix64 is the SplitMix64 finalizer and fnv1a64 the 64-bit FNV-1a hash.
// The stream seed initialises std::mt19937_64, whose output sequence is fixed
// by the C++ standard. Bounded draws and shuffles are implemented here rather
// than through <random> distributions, whose algorithms vary between standard
// libraries.
std::uint64_t fnv1a64(std::string_view text);
std::uint64_t mix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t seed, std::string_view name);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::string_view stream) : engine_(stream_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Fisher-Yates, walking from the back.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace amrkit
