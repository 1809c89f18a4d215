#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace netform {

/// Identifier written next to every seed we record. The algorithm is:
///   engine   std::mt19937_64 seeded with a single 64-bit word
///   uniform  (x >> 11) * 2^-53
///   below(b) rejection on x >= 2^64 - (2^64 mod b), then x mod b
///   shuffle  forward Fisher-Yates: for k = 0.., swap k with k + below(size - k)
///   beta     alpha == 1: 1 - (1-U)^(1/beta); beta == 1: U^(1/alpha);
///            otherwise Marsaglia-Tsang gamma ratio with Box-Muller normals
/// Seeds for derived streams come from splitmix64 over the key words.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+splitmix64/v1";

std::uint64_t splitmix64(std::uint64_t& state);

/// Stable hash of an ordered list of words, used to derive run and stream seeds.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  std::uint64_t below(std::uint64_t bound);
  double normal();
  double gamma(double shape);
  double beta(double alpha, double beta);

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t k = 0; k + 1 < items.size(); ++k) {
      const auto pick = k + static_cast<std::size_t>(below(items.size() - k));
      std::swap(items[k], items[pick]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace netform
