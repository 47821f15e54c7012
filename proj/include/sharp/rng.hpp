#pragma once

#include <cstdint>

namespace sharp {

__extension__ using uint128_t = unsigned __int128;

/// Counter-based uniform generator.
///
/// Every draw is a pure function of (seed, stream, index), so a batch of
/// samples can be split across workers in any layout and still reproduce the
/// sequential result bit for bit. The mixer is the splitmix64 finalizer.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t index) const noexcept {
    return mix(key_ + 0x9e3779b97f4a7c15ULL * (index + 1));
  }

  /// Uniform on the open interval (0, 1).
  constexpr double uniform(std::uint64_t index) const noexcept {
    return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). n must be positive.
  constexpr std::uint64_t below(std::uint64_t index, std::uint64_t n) const noexcept {
    // Multiply-shift; bias is below 2^-64 * n and irrelevant here.
    return static_cast<std::uint64_t>((static_cast<uint128_t>(bits(index)) * n) >> 64);
  }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

}  // namespace sharp
