#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace maskkit {

/**
 * Seeded random stream with platform-independent output.
 *
 * The engine is std::mt19937_64, whose raw sequence is fixed by the C++
 * standard. The standard distributions are not (libstdc++ and libc++ differ),
 * so every derived draw below is implemented here from raw 64-bit words.
 *
 * Seeding: the user seed is scrambled with SplitMix64 before it reaches the
 * engine, so nearby seeds (0, 1, 2, ...) give unrelated streams.
 *
 * Stream splitting: `split()` consumes one word from the parent and seeds a
 * child stream from it. `substream(seed, id)` derives a stream from a
 * (seed, id) pair without touching any parent; Monte-Carlo partitions use it.
 */
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64+splitmix64";

  explicit Rng(std::uint64_t seed);

  static Rng substream(std::uint64_t seed, std::uint64_t id);

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// Uniform integer in [lo, hi], inclusive on both ends.
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  /// Standard normal via the Marsaglia polar method.
  double normal();

  /// log of a Gamma(shape, 1) variate; stays finite for tiny shapes where the
  /// variate itself would underflow.
  double log_gamma_variate(double shape);

  Rng split() { return Rng(next()); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// First `count` entries of a Fisher-Yates shuffle of `items`, drawn with
/// `rng`. Equivalent to Shuffle(items)[:count]. Requires count <= size.
template <typename T>
std::vector<T> shuffle_prefix(std::vector<T> items, std::size_t count, Rng& rng) {
  const std::size_t n = items.size();
  for (std::size_t i = 0; i < count && i + 1 < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(items[i], items[j]);
  }
  items.resize(count);
  return items;
}

}  // namespace maskkit
