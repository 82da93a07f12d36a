#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "mtsaug/series.hpp"
#include "mtsaug/ts_format.hpp"

namespace mtsaug {

/// Dataset characterization, one value per column of the profile CSV.
struct DatasetProfile {
  std::string name;
  std::size_t n_classes = 0;
  std::size_t train_size = 0;
  std::size_t dim = 0;
  std::size_t length = 0;  // longest training series before padding
  double var_train = 0.0;
  double var_test = 0.0;
  double im_ratio = 0.0;
  double d_train_test = 0.0;
  double prop_miss = 0.0;
};

/// Accuracies are on the 0-100 scale.
struct GainRecord {
  double baseline_acc = 0.0;
  double augmented_acc = 0.0;
  double relative_gain_pct = 0.0;
};

/// Mean over (channel, step) of the across-series population variance.
/// Requires a non-empty, fully observed, equal-length dataset.
double dataset_variance(const LabeledDataset& ds);

/// (1/sqrt 2) * || sqrt(p) - sqrt(q) ||_2, in [0, 1].
double hellinger(std::span<const double> p, std::span<const double> q);

/// Imbalance degree with the Hellinger distance. Zero when no class falls
/// strictly below the uniform frequency 1/K.
double imbalance_degree(std::span<const std::size_t> counts);
double imbalance_degree(const LabeledDataset& ds);

/// Euclidean distance between the mean flattened vectors of the two sets.
double train_test_distance(const LabeledDataset& train, const LabeledDataset& test);

/// Unobserved entries over all entries. Variable-length series count the
/// steps between their end and the longest series as missing.
double missing_proportion(const LabeledDataset& ds);

GainRecord relative_gain(double baseline_acc, double augmented_acc);

/// Profiles raw (possibly ragged, possibly incomplete) train/test sets.
/// prop_miss is taken over train and test before imputation; variance and
/// distance after imputing both to the common longest length.
DatasetProfile profile(const LabeledDataset& train, const LabeledDataset& test, const ImputePolicy& policy = {});

std::string profile_csv_header();
std::string profile_csv_row(const DatasetProfile& p);

}  // namespace mtsaug
