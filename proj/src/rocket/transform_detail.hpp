#pragma once

#include <span>

#include "mtsaug/rocket.hpp"

namespace mtsaug::detail {

/// Throws ShapeMismatch or MissingData unless every item fits the bank.
void check_transform_shape(std::span<const LabeledItem> items, const KernelBank& bank);

}  // namespace mtsaug::detail
