#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace extime {

// Philox4x64-10 counter-based generator (Random123 constants).  Streams are
// addressed by a 128-bit key, so every simulation path gets its own stream
// and the merged output cannot depend on worker scheduling.
namespace philox {

inline constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
inline constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
inline constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                          std::array<std::uint64_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const unsigned __int128 p0 = (unsigned __int128)kMul0 * ctr[0];
    const unsigned __int128 p1 = (unsigned __int128)kMul1 * ctr[2];
    const std::array<std::uint64_t, 4> next = {
        (std::uint64_t)(p1 >> 64) ^ ctr[1] ^ key[0], (std::uint64_t)p1,
        (std::uint64_t)(p0 >> 64) ^ ctr[3] ^ key[1], (std::uint64_t)p0};
    ctr = next;
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

}  // namespace philox

// One stream of variates, keyed by (seed, stream id).  The counter is bumped
// before each block, so block k of stream s is philox::block({k,0,0,0},
// {seed, s}) with k starting at 1.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t stream)
      : key_{seed, stream} {}

  std::uint64_t next_u64() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  // [0, 1)
  double uniform() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

  // (0, 1); numerator forced odd
  double uniform_open() {
    return (double)((next_u64() >> 11) | 1ULL) * 0x1.0p-53;
  }

  // Exp(1)
  double exponential() { return -std::log1p(-uniform()); }

  // standard normal, Box-Muller with one cached value
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(2.0 * exponential());
    const double th = 6.283185307179586476925286766559 * uniform();
    cached_ = r * std::sin(th);
    have_cached_ = true;
    return r * std::cos(th);
  }

 private:
  void refill() {
    ++block_;
    buf_ = philox::block({block_, 0, 0, 0}, key_);
    pos_ = 0;
  }

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> buf_{};
  std::uint64_t block_ = 0;
  int pos_ = 4;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace extime
