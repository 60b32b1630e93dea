#ifndef I2PR_RNG_HPP_
#define I2PR_RNG_HPP_

#include <cstdint>
#include <span>
#include <utility>

namespace i2pr {

// SplitMix64, used for seeding and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Named purposes for independent streams derived from one user seed.
enum class Stream : std::uint64_t {
  kStructure = 1,
  kDirection = 2,
  kShuffle = 3,
  kAttack = 4,
};

/// xoshiro256** seeded through SplitMix64.
///
/// All structural decisions go through `below()`, which uses integer
/// rejection sampling only, so a given seed yields the same sequence on
/// every platform and compiler (unlike the std:: distributions).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  // Independent stream for `purpose`: Rng(splitmix(seed ^ golden * purpose)).
  static Rng stream(std::uint64_t seed, Stream purpose) noexcept {
    std::uint64_t mix = seed ^ (0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(purpose));
    return Rng(splitmix64(mix));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  bool coin() noexcept { return ((*this)() >> 63) != 0; }

  // Uniform real in [0, 1) with 53 random bits. Not used for structure.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

// Fisher-Yates shuffle driven by Rng::below (std::shuffle is not portable).
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace i2pr

#endif  // I2PR_RNG_HPP_
