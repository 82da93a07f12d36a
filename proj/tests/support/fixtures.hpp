// Small builders shared by the test suites.
#pragma once

#include <string>
#include <vector>

#include "mtsaug/rng.hpp"
#include "mtsaug/series.hpp"

namespace fixtures {

inline mtsaug::Series random_series(std::size_t m, std::size_t t, mtsaug::RngStream& rng, double scale = 1.0,
                                    std::string id = {}) {
  std::vector<double> v(m * t);
  for (auto& x : v) x = scale * rng.normal();
  return mtsaug::Series(m, t, std::move(v), {}, std::move(id));
}

// Dataset with `counts[c]` random series of class c.
inline mtsaug::LabeledDataset random_dataset(const std::vector<std::size_t>& counts, std::size_t m, std::size_t t,
                                             mtsaug::RngStream& rng, std::string name = "toy") {
  std::vector<std::string> labels;
  std::vector<mtsaug::LabeledItem> items;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    labels.push_back("c" + std::to_string(c));
    for (std::size_t i = 0; i < counts[c]; ++i) {
      items.push_back({random_series(m, t, rng, 1.0, name + "/" + std::to_string(items.size())), c});
    }
  }
  return mtsaug::LabeledDataset(std::move(name), std::move(labels), std::move(items));
}

// Two classes separated by a constant per-channel offset plus noise.
inline mtsaug::LabeledDataset offset_dataset(std::size_t per_class, std::size_t m, std::size_t t, double offset,
                                             double noise, mtsaug::RngStream& rng, std::string name = "offset") {
  std::vector<mtsaug::LabeledItem> items;
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const std::size_t label = i % 2;
    std::vector<double> v(m * t);
    for (auto& x : v) x = (label ? offset : -offset) + noise * rng.normal();
    items.push_back({mtsaug::Series(m, t, std::move(v), {}, name + "/" + std::to_string(i)), label});
  }
  return mtsaug::LabeledDataset(std::move(name), {"neg", "pos"}, std::move(items));
}

}  // namespace fixtures
