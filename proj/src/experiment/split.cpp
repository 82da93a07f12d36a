#include <algorithm>
#include <cmath>

#include "mtsaug/error.hpp"
#include "mtsaug/experiment.hpp"

namespace mtsaug {

SplitResult split_stratified(const LabeledDataset& ds, std::size_t ratio_a, std::size_t ratio_b, RngStream& rng,
                             std::size_t original_count) {
  if (ratio_a == 0 || ratio_b == 0) throw Error(ErrorKind::InvalidArgument, "split_stratified: ratio parts must be positive");
  original_count = std::min(original_count, ds.size());

  SplitResult out;
  std::vector<std::uint8_t> in_b(ds.size(), 0);
  for (std::size_t c = 0; c < ds.num_labels(); ++c) {
    std::vector<std::size_t> originals;
    for (std::size_t i = 0; i < original_count; ++i) {
      if (ds[i].label == c) originals.push_back(i);
    }
    const std::size_t n = originals.size();
    if (n == 0) continue;
    if (n == 1) {
      out.warnings.push_back("ClassTooSmall: class '" + ds.labels()[c] + "' has one original member; kept in part_a");
      continue;
    }
    const double share = static_cast<double>(n) * static_cast<double>(ratio_b) / static_cast<double>(ratio_a + ratio_b);
    const auto take = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(share)), 1, n - 1);
    for (std::size_t i = n; i > 1; --i) std::swap(originals[i - 1], originals[rng.below(i)]);
    for (std::size_t j = 0; j < take; ++j) in_b[originals[j]] = 1;
  }

  std::vector<LabeledItem> a;
  std::vector<LabeledItem> b;
  for (std::size_t i = 0; i < ds.size(); ++i) (in_b[i] ? b : a).push_back(ds[i]);
  out.part_a = LabeledDataset(ds.name(), ds.labels(), std::move(a));
  out.part_b = LabeledDataset(ds.name(), ds.labels(), std::move(b));
  return out;
}

}  // namespace mtsaug
