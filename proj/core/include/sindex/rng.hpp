#pragma once

#include <cmath>
#include <cstdint>

namespace sindex {

/// Counter-based splittable PRNG.
///
/// Each instance is an independent stream identified by a 64-bit key; the
/// n-th output is a pure function of (key, n), and child streams are derived
/// by hashing the key with a stream id. A replicate worker can therefore
/// split off as many substreams as it needs without touching its parent's
/// state, and parallel runs produce the same draws as serial ones.
/// The core generator is the splitmix64 sequence, so individual streams have
/// good statistical quality; identical seeds give identical sequences on
/// every platform (no dependence on libstdc++ distribution internals).
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : key_(mix(seed + kPhi)) {}

  /// Independent substream. Pure function of (key, id): does not consume
  /// from, nor depend on, the parent's position.
  [[nodiscard]] Stream child(std::uint64_t id) const {
    return Stream(FromKey{}, mix(key_ ^ mix((id + 1) * kGamma)));
  }

  std::uint64_t next_u64() { return mix(key_ + (++ctr_) * kPhi); }

  /// Uniform on (0, 1]; never returns 0 so logs are safe.
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double uniform_co() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (consumes two uniforms per pair).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 6.283185307179586476925286766559 * uniform_co();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Exponential with rate 1.
  double exponential() { return -std::log(uniform()); }

  /// Uniform integer on [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  struct FromKey {};
  Stream(FromKey, std::uint64_t key) : key_(key) {}

  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kGamma = 0xd1342543de82ef95ULL;

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sindex
