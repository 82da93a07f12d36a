#include <algorithm>

#include "mtsaug/error.hpp"
#include "mtsaug/ts_format.hpp"

namespace mtsaug {
namespace {

void fill_channel(std::span<const double> in, std::span<const std::uint8_t> mask, ImputeMethod method,
                  std::vector<double>& out) {
  const std::size_t n = in.size();
  out.assign(in.begin(), in.end());
  if (method == ImputeMethod::ZeroFill) {
    for (std::size_t t = 0; t < n; ++t) {
      if (!mask[t]) out[t] = 0.0;
    }
    return;
  }

  std::size_t first = 0;
  while (first < n && !mask[first]) ++first;
  // Head is back-filled from the first observation under both remaining methods.
  for (std::size_t t = 0; t < first; ++t) out[t] = in[first];

  std::size_t prev = first;
  for (std::size_t t = first + 1; t < n; ++t) {
    if (!mask[t]) continue;
    if (t > prev + 1) {
      for (std::size_t g = prev + 1; g < t; ++g) {
        if (method == ImputeMethod::ForwardFill) {
          out[g] = in[prev];
        } else {
          const double w = static_cast<double>(g - prev) / static_cast<double>(t - prev);
          out[g] = in[prev] + w * (in[t] - in[prev]);
        }
      }
    }
    prev = t;
  }
  for (std::size_t t = prev + 1; t < n; ++t) out[t] = in[prev];
}

}  // namespace

LabeledDataset impute(const LabeledDataset& ds, const ImputePolicy& policy) {
  const std::size_t longest = ds.max_length();
  std::size_t target = longest;
  if (policy.pad_to) {
    if (*policy.pad_to == 0) throw Error(ErrorKind::InvalidArgument, "impute: pad length must be positive");
    if (*policy.pad_to < longest && !policy.truncate) {
      throw Error(ErrorKind::InvalidArgument, "impute: pad length " + std::to_string(*policy.pad_to) +
                                                  " is shorter than the longest series (" + std::to_string(longest) +
                                                  ") and truncation is off");
    }
    target = *policy.pad_to;
  }

  std::vector<LabeledItem> items;
  items.reserve(ds.size());
  std::vector<double> filled;
  for (const auto& item : ds.items()) {
    const Series& s = item.series;
    if (s.fully_observed() && s.length() == target) {
      items.push_back(item);
      continue;
    }
    std::vector<double> values(s.channels() * target);
    for (std::size_t m = 0; m < s.channels(); ++m) {
      const auto mask = s.channel_mask(m);
      if (std::none_of(mask.begin(), mask.end(), [](std::uint8_t b) { return b != 0; })) {
        throw Error(ErrorKind::AllMissingChannel,
                    "series '" + s.id() + "' channel " + std::to_string(m) + " has no observed value");
      }
      fill_channel(s.channel(m), mask, policy.method, filled);
      const std::size_t keep = std::min(target, s.length());
      const double pad = policy.pad_value == PadValue::Edge ? filled[s.length() - 1] : 0.0;
      for (std::size_t t = 0; t < target; ++t) values[m * target + t] = t < keep ? filled[t] : pad;
    }
    items.push_back({Series(s.channels(), target, std::move(values), {}, s.id()), item.label});
  }
  return LabeledDataset(ds.name(), ds.labels(), std::move(items));
}

std::optional<ImputeMethod> parse_impute_method(std::string_view text) {
  if (text == "linear" || text == "linear-interpolate") return ImputeMethod::LinearInterpolate;
  if (text == "forward-fill" || text == "ffill") return ImputeMethod::ForwardFill;
  if (text == "zero-fill" || text == "zero") return ImputeMethod::ZeroFill;
  return std::nullopt;
}

std::optional<PadValue> parse_pad_value(std::string_view text) {
  if (text == "edge") return PadValue::Edge;
  if (text == "zero") return PadValue::Zero;
  return std::nullopt;
}

}  // namespace mtsaug
