#ifndef SDR_RNG_HPP
#define SDR_RNG_HPP

#include <cmath>
#include <cstdint>

namespace sdr {

/// SplitMix64 finalizer; used to derive child seeds/streams from a base seed
/// and an index so that substreams are decorrelated and platform-independent.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1ull);
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

/// Philox 4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The key is the 64-bit seed, the 128-bit counter is split into a 64-bit
/// stream id (high words) and a 64-bit position (low words). Distinct
/// (seed, stream) pairs give statistically independent sequences, and the
/// integer output is bit-exact on every platform. Derived reals go through
/// libm (log/cos/sin), which is sub-ulp-stable on mainstream toolchains.
class Philox {
public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        stream_(stream) {}

  std::uint64_t next_u64() {
    if (bufpos_ >= 2) refill();
    return buf_[bufpos_++];
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (lo, hi].
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * positive_uniform01();
  }

  /// Standard normal via Box-Muller; consumes two uniforms per pair and
  /// caches the second draw.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = positive_uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  bool bernoulli(double prob) { return uniform01() < prob; }

private:
  /// Uniform on (0, 1]; strictly positive so log() is safe.
  double positive_uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1ull) * 0x1.0p-53;
  }

  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
  }

  void refill() {
    std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
      }
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2511F53u, c0, hi0, lo0);
      mulhilo(0xCD9E8D57u, c2, hi1, lo1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
    }
    buf_[0] = (static_cast<std::uint64_t>(c1) << 32) | c0;
    buf_[1] = (static_cast<std::uint64_t>(c3) << 32) | c2;
    bufpos_ = 0;
    ++counter_;
  }

  std::uint32_t key0_, key1_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::uint64_t buf_[2] = {0, 0};
  int bufpos_ = 2;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sdr

#endif  // SDR_RNG_HPP
