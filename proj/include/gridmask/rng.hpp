#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace gridmask {

// splitmix64 finalizer. Also the building block for deriving child streams.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for an independent child stream. Every parallel split in this library
// goes through this function: batch image i uses mix_seed(master, i), the
// simulator chains mix_seed over (method, x, trial). Same inputs, same stream,
// regardless of thread count.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64(base ^ mix64(index));
}

// xoshiro256** stream, state expanded from a single 64-bit seed via splitmix64.
// All randomness in the library flows through this class so results are
// reproducible across platforms (no implementation-defined distributions).
class SeedStream {
 public:
  SeedStream() : SeedStream(0) {}

  explicit SeedStream(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  // Uniform over [0, n), unbiased (Lemire multiply-with-rejection).
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("SeedStream::next_below: n must be positive");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t cutoff = (0 - n) % n;
      while (low < cutoff) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Inclusive integer range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("SeedStream::uniform_int: empty range");
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return lo + static_cast<std::int64_t>(next_below(span));
  }

  // [0, 1) with 53-bit resolution.
  double next_double() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace gridmask
