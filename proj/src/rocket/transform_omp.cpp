#include <algorithm>
#include <limits>
#include <vector>

#include "mtsaug/rocket.hpp"
#include "transform_detail.hpp"

namespace mtsaug {
namespace {

// Same floating-point operation sequence per output as apply_kernel (rows,
// then taps, skipping padded positions, bias last), but tap-major over an
// output buffer so the inner loop is contiguous.
KernelResponse convolve(const Series& s, const Kernel& k, std::vector<double>& acc) {
  const auto t = static_cast<std::ptrdiff_t>(s.length());
  const auto pad = static_cast<std::ptrdiff_t>(k.padding);
  const auto dil = static_cast<std::ptrdiff_t>(k.dilation);
  const std::ptrdiff_t outputs = t + 2 * pad - static_cast<std::ptrdiff_t>(k.span());
  if (outputs <= 0) return {0.0, 0.0};

  acc.assign(static_cast<std::size_t>(outputs), 0.0);
  double* a = acc.data();
  for (std::size_t r = 0; r < k.channels.size(); ++r) {
    const double* x = s.channel(k.channels[r]).data();
    const double* w = k.weights.data() + r * k.length;
    for (std::size_t i = 0; i < k.length; ++i) {
      const std::ptrdiff_t shift = static_cast<std::ptrdiff_t>(i) * dil - pad;  // idx = o + shift
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -shift);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(outputs, t - shift);
      const double wi = w[i];
      for (std::ptrdiff_t o = lo; o < hi; ++o) a[o] += wi * x[o + shift];
    }
  }

  std::size_t positive = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t o = 0; o < outputs; ++o) {
    const double value = a[o] + k.bias;
    positive += value > 0.0 ? 1 : 0;
    best = std::max(best, value);
  }
  return {static_cast<double>(positive) / static_cast<double>(outputs), best};
}

}  // namespace

FeatureMatrix transform(std::span<const LabeledItem> items, const KernelBank& bank) {
  detail::check_transform_shape(items, bank);
  const std::size_t n_kernels = bank.kernels.size();
  FeatureMatrix out(static_cast<Eigen::Index>(items.size()), static_cast<Eigen::Index>(bank.feature_count()));
  const auto tasks = static_cast<std::ptrdiff_t>(items.size() * n_kernels);
  double* data = out.data();

#pragma omp parallel
  {
    std::vector<double> acc;
#pragma omp for schedule(static, 64)
    for (std::ptrdiff_t task = 0; task < tasks; ++task) {
      const auto i = static_cast<std::size_t>(task) / n_kernels;
      const auto k = static_cast<std::size_t>(task) % n_kernels;
      const KernelResponse r = convolve(items[i].series, bank.kernels[k], acc);
      data[i * 2 * n_kernels + 2 * k] = r.ppv;
      data[i * 2 * n_kernels + 2 * k + 1] = r.max;
    }
  }
  return out;
}

FeatureMatrix transform(const LabeledDataset& ds, const KernelBank& bank) {
  return transform(std::span<const LabeledItem>(ds.items()), bank);
}

}  // namespace mtsaug
