#include "mtsaug/error.hpp"
#include "mtsaug/rocket.hpp"
#include "transform_detail.hpp"

namespace mtsaug {

void detail::check_transform_shape(std::span<const LabeledItem> items, const KernelBank& bank) {
  for (const auto& item : items) {
    if (item.series.length() != bank.input_length || item.series.channels() != bank.input_channels) {
      throw Error(ErrorKind::ShapeMismatch, "transform: series '" + item.series.id() + "' is " +
                                                std::to_string(item.series.channels()) + "x" +
                                                std::to_string(item.series.length()) + ", bank expects " +
                                                std::to_string(bank.input_channels) + "x" +
                                                std::to_string(bank.input_length));
    }
    require_fully_observed(item.series, "transform");
  }
}

FeatureMatrix transform_serial(std::span<const LabeledItem> items, const KernelBank& bank) {
  detail::check_transform_shape(items, bank);
  FeatureMatrix out(static_cast<Eigen::Index>(items.size()), static_cast<Eigen::Index>(bank.feature_count()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t k = 0; k < bank.kernels.size(); ++k) {
      const KernelResponse r = apply_kernel(items[i].series, bank.kernels[k]);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(2 * k)) = r.ppv;
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(2 * k + 1)) = r.max;
    }
  }
  return out;
}

}  // namespace mtsaug
