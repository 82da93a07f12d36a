#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mtsaug/error.hpp"
#include "mtsaug/rocket.hpp"

namespace mtsaug {

KernelBank generate_kernels(std::size_t n, std::size_t length, std::size_t channels, RngStream& rng) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "generate_kernels: need at least one kernel");
  if (channels == 0) throw Error(ErrorKind::InvalidArgument, "generate_kernels: need at least one channel");
  if (length < 7) {
    throw Error(ErrorKind::SeriesTooShort, "generate_kernels: series length " + std::to_string(length) + " < 7");
  }

  std::vector<std::size_t> lengths;
  for (std::size_t l : {7, 9, 11}) {
    if (l <= length) lengths.push_back(l);
  }
  std::size_t max_exp = 0;
  while ((std::size_t{2} << max_exp) <= channels) ++max_exp;  // floor(log2(channels))

  KernelBank bank;
  bank.input_length = length;
  bank.input_channels = channels;
  bank.seed = rng.seed();
  bank.stream_label = rng.label();
  bank.kernels.reserve(n);

  std::vector<std::size_t> pool(channels);
  for (std::size_t i = 0; i < n; ++i) {
    Kernel k;
    k.length = lengths[rng.below(lengths.size())];

    const std::size_t subset = channels == 1 ? 1 : (std::size_t{1} << rng.below(max_exp + 1));
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t j = 0; j < subset; ++j) std::swap(pool[j], pool[j + rng.below(channels - j)]);
    k.channels.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(subset));
    std::sort(k.channels.begin(), k.channels.end());

    k.weights.resize(subset * k.length);
    for (std::size_t r = 0; r < subset; ++r) {
      double* row = k.weights.data() + r * k.length;
      double mean = 0.0;
      for (std::size_t j = 0; j < k.length; ++j) {
        row[j] = rng.normal();
        mean += row[j];
      }
      mean /= static_cast<double>(k.length);
      for (std::size_t j = 0; j < k.length; ++j) row[j] -= mean;
    }
    k.bias = rng.uniform(-1.0, 1.0);

    const std::size_t max_dilation = (length - 1) / (k.length - 1);
    const double upper = std::log2(static_cast<double>(length - 1) / static_cast<double>(k.length - 1));
    const auto dilation = static_cast<std::size_t>(std::floor(std::exp2(rng.uniform(0.0, upper))));
    k.dilation = std::clamp<std::size_t>(dilation, 1, max_dilation);
    k.padding = rng.coin() ? k.span() / 2 : 0;
    bank.kernels.push_back(std::move(k));
  }
  return bank;
}

KernelResponse apply_kernel(const Series& s, const Kernel& k) {
  require_fully_observed(s, "apply_kernel");
  for (std::size_t c : k.channels) {
    if (c >= s.channels()) {
      throw Error(ErrorKind::ChannelOutOfRange, "apply_kernel: kernel reads channel " + std::to_string(c) +
                                                    " of a " + std::to_string(s.channels()) + "-channel series");
    }
  }
  const auto t = static_cast<std::ptrdiff_t>(s.length());
  const auto pad = static_cast<std::ptrdiff_t>(k.padding);
  const auto dil = static_cast<std::ptrdiff_t>(k.dilation);
  const std::ptrdiff_t outputs = t + 2 * pad - static_cast<std::ptrdiff_t>(k.span());
  if (outputs <= 0) return {0.0, 0.0};

  std::size_t positive = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t o = 0; o < outputs; ++o) {
    const std::ptrdiff_t start = o - pad;
    double sum = 0.0;
    for (std::size_t r = 0; r < k.channels.size(); ++r) {
      const auto x = s.channel(k.channels[r]);
      const auto w = k.row(r);
      for (std::size_t i = 0; i < k.length; ++i) {
        const std::ptrdiff_t idx = start + static_cast<std::ptrdiff_t>(i) * dil;
        if (idx >= 0 && idx < t) sum += w[i] * x[static_cast<std::size_t>(idx)];
      }
    }
    const double value = sum + k.bias;
    if (value > 0.0) ++positive;
    best = std::max(best, value);
  }
  return {static_cast<double>(positive) / static_cast<double>(outputs), best};
}

Series znormalize(const Series& s) {
  require_fully_observed(s, "znormalize");
  const auto stds = per_channel_std(s);
  std::vector<double> out(s.values().begin(), s.values().end());
  for (std::size_t m = 0; m < s.channels(); ++m) {
    const auto ch = s.channel(m);
    const double mean = std::accumulate(ch.begin(), ch.end(), 0.0) / static_cast<double>(ch.size());
    const double scale = stds[m] > 0.0 ? 1.0 / stds[m] : 1.0;
    for (std::size_t t = 0; t < s.length(); ++t) out[m * s.length() + t] = (ch[t] - mean) * scale;
  }
  return Series(s.channels(), s.length(), std::move(out), {}, s.id());
}

}  // namespace mtsaug
