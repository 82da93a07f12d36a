#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mtsaug/rng.hpp"
#include "mtsaug/series.hpp"

namespace mtsaug {

/// One random dilated convolution kernel. `weights` holds one row of
/// `length` taps per entry of `channels`, row-major.
struct Kernel {
  std::size_t length = 0;
  std::vector<double> weights;
  double bias = 0.0;
  std::size_t dilation = 1;
  std::size_t padding = 0;
  std::vector<std::size_t> channels;

  std::size_t span() const noexcept { return (length - 1) * dilation; }
  std::span<const double> row(std::size_t r) const noexcept { return {weights.data() + r * length, length}; }

  friend bool operator==(const Kernel&, const Kernel&) = default;
};

struct KernelBank {
  std::vector<Kernel> kernels;
  std::size_t input_length = 0;
  std::size_t input_channels = 0;
  std::uint64_t seed = 0;
  std::string stream_label;

  std::size_t feature_count() const noexcept { return 2 * kernels.size(); }

  friend bool operator==(const KernelBank&, const KernelBank&) = default;
};

inline constexpr std::size_t kDefaultKernelCount = 10'000;

/// Draws `n` kernels for series of `length` steps and `channels` channels.
/// Kernel lengths are drawn from {7, 9, 11} restricted to lengths that fit
/// the series, so every kernel satisfies (length - 1) * dilation <= T - 1.
KernelBank generate_kernels(std::size_t n, std::size_t length, std::size_t channels, RngStream& rng);

struct KernelResponse {
  double ppv = 0.0;  // fraction of outputs > 0
  double max = 0.0;
};

/// Scalar reference: one output position at a time, rows then taps.
KernelResponse apply_kernel(const Series& s, const Kernel& k);

using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Row i holds (ppv, max) for every kernel, in kernel order, for items[i].
/// The parallel version shards (series, kernel) pairs over OpenMP threads
/// and is bitwise identical to the serial reference for any thread count.
FeatureMatrix transform(std::span<const LabeledItem> items, const KernelBank& bank);
FeatureMatrix transform(const LabeledDataset& ds, const KernelBank& bank);
FeatureMatrix transform_serial(std::span<const LabeledItem> items, const KernelBank& bank);

/// Per-channel z-normalization (zero-variance channels are only centered).
Series znormalize(const Series& s);

void write_features_csv(std::ostream& out, const FeatureMatrix& features);

/// Versioned text form with hexadecimal floats; reload is exact.
void save_bank(std::ostream& out, const KernelBank& bank);
KernelBank load_bank(std::istream& in);

}  // namespace mtsaug
