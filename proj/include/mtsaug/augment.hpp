#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mtsaug/rng.hpp"
#include "mtsaug/series.hpp"

namespace mtsaug {

/// Parameter values an operator drew, in draw order ("lambda", "start", ...).
using DrawLog = std::vector<std::pair<std::string, double>>;

enum class MaskFill { Zero, ChannelMean };

struct NoiseParams { double level = 1.0; };
struct SmoteParams {};
struct GaussianCovParams { double shrinkage = 0.1; };
struct ScaleParams { double low = 0.8; double high = 1.2; };
struct RotateParams {};
struct SliceParams { double ratio = 0.9; };
struct PermuteParams { std::size_t segments = 4; };
struct TimeMaskParams { double ratio = 0.1; MaskFill fill = MaskFill::Zero; };
struct FreqMaskParams { double ratio = 0.1; };
struct WindowWarpParams {
  double window_ratio = 0.1;
  std::vector<double> scales{0.5, 2.0};
};

using AugmenterKind = std::variant<NoiseParams, SmoteParams, GaussianCovParams, ScaleParams, RotateParams, SliceParams,
                                   PermuteParams, TimeMaskParams, FreqMaskParams, WindowWarpParams>;

/// One configured augmentation technique.
///
/// Text form: `name[:key=value]...`, e.g. `noise_3`, `noise:level=2.5`,
/// `gaussian-cov:shrinkage=0.2`, `window-warp:ratio=0.1:scales=0.5/2`.
/// `label()` returns the canonical text, which parses back to the same spec.
struct AugmenterSpec {
  AugmenterKind kind;

  std::string label() const;
  std::string technique() const;  // kind name without parameters
  /// Throws RatioOutOfRange / InvalidArgument on parameters outside their domain.
  void validate() const;

  static AugmenterSpec parse(std::string_view text);
};

/// Provenance of one synthetic series.
struct SynthesisRecord {
  std::string synthetic_id;
  std::vector<std::string> parent_ids;
  std::string technique;
  DrawLog parameters;
};

struct SyntheticItem {
  Series series;
  SynthesisRecord record;
};

// Per-series operators. All require a fully observed input, keep (M, T),
// and consume only `rng`. `log`, when given, receives the drawn parameters.

Series inject_noise(const Series& s, double level, RngStream& rng, DrawLog* log = nullptr);
Series scale(const Series& s, double low, double high, RngStream& rng, DrawLog* log = nullptr);
Series rotate(const Series& s, RngStream& rng, DrawLog* log = nullptr);
Series slice_resize(const Series& s, double ratio, RngStream& rng, DrawLog* log = nullptr);
Series permute_segments(const Series& s, std::size_t n_segments, RngStream& rng, DrawLog* log = nullptr);
Series time_mask(const Series& s, double ratio, RngStream& rng, MaskFill fill = MaskFill::Zero,
                 DrawLog* log = nullptr);
Series window_warp(const Series& s, double window_ratio, std::span<const double> scales, RngStream& rng,
                   DrawLog* log = nullptr);
/// Zeroes a contiguous band of ceil(ratio * T / 2) positive-frequency bins
/// (and their mirrors) in every channel. ratio in [0, 1].
Series freq_mask(const Series& s, double ratio, RngStream& rng, DrawLog* log = nullptr);

/// Linear resampling of `x` onto `out_length` evenly spaced points that
/// keep both endpoints.
std::vector<double> resample_linear(std::span<const double> x, std::size_t out_length);

/// k = min(5, n - 1) nearest same-class neighbours on flattened vectors;
/// n = 1 falls back to duplicating the only member.
std::vector<SyntheticItem> smote_synthesize(const LabeledDataset& ds, std::size_t class_idx, std::size_t count,
                                            RngStream& rng);

/// Samples from N(mu, (1 - shrinkage) S + shrinkage diag(S)) fitted to the
/// flattened class members (S: population covariance).
std::vector<SyntheticItem> gaussian_cov_synthesize(const LabeledDataset& ds, std::size_t class_idx, std::size_t count,
                                                   double shrinkage, RngStream& rng);

std::size_t smote_neighbor_count(std::size_t class_size) noexcept;

struct BalancedDataset {
  LabeledDataset data;          // originals first, synthetic items appended
  std::size_t original_count = 0;
  std::vector<SynthesisRecord> records;  // records[i] describes data[original_count + i]
};

/// Oversamples every class up to the largest class count.
BalancedDataset balance_dataset(const LabeledDataset& ds, const AugmenterSpec& spec, const RngStream& rng);

struct NoiseCalibration {
  std::size_t label = 0;
  double level = 0.0;
  bool fallback = false;  // no level kept every sample on its class; smallest returned
  std::vector<std::size_t> violations;  // per level: samples whose 1-NN had another label
};

/// Per class, the largest level whose `trials` noisy samples all have a
/// same-label nearest neighbour among the original items. The draws for
/// (class c, level index i) come from rng.child("class:c").child("level:i").
std::vector<NoiseCalibration> calibrate_noise_level(const LabeledDataset& ds, std::span<const double> levels,
                                                    std::size_t trials, const RngStream& rng);

}  // namespace mtsaug
