#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace gridplan {

/// Deterministic 64-bit random stream. All bounded sampling goes through
/// next_below, which uses masked rejection on raw engine output, so results
/// never depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform over [0, bound); bound must be >= 1.
  std::uint64_t next_below(std::uint64_t bound);

  /// Uniform over [lo, hi], inclusive.
  int next_int(int lo, int hi);

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k) {
      std::swap(v[k - 1], v[next_below(k)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// FNV-1a over the bytes of s.
std::uint64_t hash_str(std::string_view s);

/// Named per-run seed hash: chains splitmix64 over (base, tag, a, b) so
/// adding runs with other identifiers never perturbs existing seeds.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                          std::uint64_t a, std::uint64_t b);

}  // namespace gridplan
