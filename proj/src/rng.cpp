#include "mtsaug/rng.hpp"

#include <cmath>
#include <numbers>

namespace mtsaug {

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t derive_key(std::uint64_t parent, std::string_view label) noexcept {
  return mix64(mix64(parent) ^ fnv1a64(label));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string_view label)
    : RngStream(seed, std::string(label), derive_key(seed, label)) {}

RngStream::RngStream(std::uint64_t seed, std::string label, std::uint64_t key)
    : seed_(seed), label_(std::move(label)), key_(key) {}

RngStream RngStream::child(std::string_view label) const {
  std::string full = label_;
  full += '/';
  full += label;
  return RngStream(seed_, std::move(full), derive_key(key_, label));
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t c = counter_++;
  return mix64(key_ ^ mix64(c * 0xd1342543de82ef95ULL + 1));
}

double RngStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) noexcept {
  return lo + (hi - lo) * uniform();
}

std::uint64_t RngStream::below(std::uint64_t n) noexcept {
  // Reject the short tail so every residue is equally likely.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % n;
}

double RngStream::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace mtsaug
