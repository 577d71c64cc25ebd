#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "nlexit/errors.hpp"

namespace nlexit {

// Philox 4x64, 10 rounds (Salmon et al., "Parallel random numbers: as easy
// as 1, 2, 3", SC'11). Counter-based: the output block is a pure function of
// (counter, key), so variates can be generated in any order, on any number
// of threads, with identical results.
struct Philox4x64 {
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      const unsigned __int128 p0 =
          static_cast<unsigned __int128>(kMul0) * ctr[0];
      const unsigned __int128 p1 =
          static_cast<unsigned __int128>(kMul1) * ctr[2];
      const std::uint64_t hi0 = static_cast<std::uint64_t>(p0 >> 64);
      const std::uint64_t lo0 = static_cast<std::uint64_t>(p0);
      const std::uint64_t hi1 = static_cast<std::uint64_t>(p1 >> 64);
      const std::uint64_t lo1 = static_cast<std::uint64_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

/// Maps a 64-bit word to the open interval (0,1); never returns 0 or 1.
inline double u64_to_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

/// Inverse standard normal CDF, Wichura's algorithm AS241 (PPND16).
/// Absolute accuracy around 1e-16 over (0,1).
double inverse_normal_cdf(double p);

/// Deterministic variate stream for one simulated path.
///
/// The i-th variate is a pure function of (seed, path_index, i): two streams
/// constructed with equal fields are identical, and the generation order
/// (including the thread that asks) is irrelevant. Instances cache the last
/// Philox block, so sequential access costs one block per four variates;
/// the cache makes instances cheap but not shareable across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t path_index)
      : key_{seed, path_index}, cached_block_(~std::uint64_t{0}) {}

  std::uint64_t seed() const { return key_[0]; }
  std::uint64_t path_index() const { return key_[1]; }

  /// i-th U(0,1) variate of the stream.
  double uniform(std::uint64_t i) const { return u64_to_unit(word(i)); }

  /// i-th N(0,1) variate of the stream.
  double normal(std::uint64_t i) const {
    return inverse_normal_cdf(uniform(i));
  }

 private:
  std::uint64_t word(std::uint64_t i) const {
    const std::uint64_t blk = i >> 2;
    if (blk != cached_block_) {
      cache_ = Philox4x64::block({blk, 0, 0, 0}, key_);
      cached_block_ = blk;
    }
    return cache_[i & 3];
  }

  Philox4x64::Key key_;
  mutable std::uint64_t cached_block_;
  mutable Philox4x64::Counter cache_{};
};

}  // namespace nlexit
