#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mtsaug {

/// Named, seedable, counter-based random stream.
///
/// The stream key is derived from (seed, label) with a fixed 64-bit mix, and
/// the i-th output is a keyed hash of the counter i. Every distribution below
/// is implemented here, not taken from <random>, so a given (seed, label)
/// yields the same values on every standard library and platform.
///
/// `child()` splits off an independent stream; children depend only on the
/// parent's key and the child label, never on how far the parent advanced.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view label);

  RngStream child(std::string_view label) const;

  std::uint64_t seed() const noexcept { return seed_; }
  const std::string& label() const noexcept { return label_; }
  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t position() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept;
  /// Unbiased integer in [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept;
  /// Standard normal via Box-Muller (one output per pair of uniforms).
  double normal() noexcept;
  bool coin() noexcept { return (next_u64() >> 63) != 0; }

 private:
  RngStream(std::uint64_t seed, std::string label, std::uint64_t key);

  std::uint64_t seed_;
  std::string label_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t fnv1a64(std::string_view text) noexcept;
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace mtsaug
