#include "mtsaug/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "mtsaug/error.hpp"

namespace mtsaug {
namespace {

void require_dense(const LabeledDataset& ds, const char* context) {
  if (ds.empty()) throw Error(ErrorKind::EmptyDataset, std::string(context) + ": dataset is empty");
  if (!ds.fully_observed()) throw Error(ErrorKind::MissingData, std::string(context) + ": dataset has missing values");
  if (!ds.equal_length()) throw Error(ErrorKind::ShapeMismatch, std::string(context) + ": series lengths differ");
}

std::vector<double> mean_vector(const LabeledDataset& ds) {
  std::vector<double> mean(ds[0].series.size(), 0.0);
  for (const auto& item : ds.items()) {
    const auto v = item.series.values();
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += v[j];
  }
  for (double& x : mean) x /= static_cast<double>(ds.size());
  return mean;
}

void check_distribution(std::span<const double> p, const char* which) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw Error(ErrorKind::NotADistribution, std::string(which) + " has a negative entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorKind::NotADistribution, std::string(which) + " does not sum to 1");
}

std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

double dataset_variance(const LabeledDataset& ds) {
  require_dense(ds, "dataset_variance");
  const std::size_t cells = ds[0].series.size();
  const auto n = static_cast<double>(ds.size());
  const std::vector<double> mean = mean_vector(ds);
  double total = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    double ss = 0.0;
    for (const auto& item : ds.items()) {
      const double d = item.series.values()[j] - mean[j];
      ss += d * d;
    }
    total += ss / n;
  }
  return total / static_cast<double>(cells);
}

double hellinger(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorKind::DimensionMismatch, "hellinger: lengths differ");
  check_distribution(p, "p");
  check_distribution(q, "q");
  double ss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    ss += d * d;
  }
  return std::min(1.0, std::sqrt(ss) / std::sqrt(2.0));
}

double imbalance_degree(std::span<const std::size_t> counts) {
  const std::size_t k = counts.size();
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (k == 0 || total == 0) throw Error(ErrorKind::EmptyDataset, "imbalance_degree: no labeled items");

  // Minority: frequency strictly below 1/K, i.e. count * K < total.
  std::size_t minority = 0;
  for (std::size_t c : counts) minority += (c * k < total) ? 1 : 0;
  if (minority == 0) return 0.0;

  const double uniform = 1.0 / static_cast<double>(k);
  std::vector<double> empirical(k);
  for (std::size_t i = 0; i < k; ++i) empirical[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  const std::vector<double> even(k, uniform);

  // Extreme distribution with exactly `minority` zero classes: the other
  // majorities stay at 1/K and one class absorbs the remaining mass.
  std::vector<double> extreme(k, 0.0);
  for (std::size_t i = 0; i + 1 < k - minority; ++i) extreme[i] = uniform;
  extreme[k - minority - 1] = 1.0 - static_cast<double>(k - minority - 1) * uniform;

  return hellinger(empirical, even) / hellinger(extreme, even) + static_cast<double>(minority - 1);
}

double imbalance_degree(const LabeledDataset& ds) {
  if (ds.empty()) throw Error(ErrorKind::EmptyDataset, "imbalance_degree: dataset is empty");
  const auto counts = class_counts(ds);
  return imbalance_degree(counts);
}

double train_test_distance(const LabeledDataset& train, const LabeledDataset& test) {
  require_dense(train, "train_test_distance");
  require_dense(test, "train_test_distance");
  if (train.channels() != test.channels() || train.max_length() != test.max_length()) {
    throw Error(ErrorKind::ShapeMismatch, "train_test_distance: train and test shapes differ");
  }
  const auto a = mean_vector(train);
  const auto b = mean_vector(test);
  double ss = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) ss += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(ss);
}

double missing_proportion(const LabeledDataset& ds) {
  if (ds.empty()) return 0.0;
  const std::size_t longest = ds.max_length();
  std::size_t missing = 0;
  std::size_t total = 0;
  for (const auto& item : ds.items()) {
    const Series& s = item.series;
    missing += s.missing_count() + s.channels() * (longest - s.length());
    total += s.channels() * longest;
  }
  return static_cast<double>(missing) / static_cast<double>(total);
}

GainRecord relative_gain(double baseline_acc, double augmented_acc) {
  if (!(baseline_acc > 0.0)) throw Error(ErrorKind::ZeroBaseline, "relative_gain: baseline accuracy must be positive");
  return {baseline_acc, augmented_acc, 100.0 * (augmented_acc - baseline_acc) / baseline_acc};
}

DatasetProfile profile(const LabeledDataset& train, const LabeledDataset& test, const ImputePolicy& policy) {
  if (train.empty() || test.empty()) throw Error(ErrorKind::EmptyDataset, "profile: train or test set is empty");
  if (train.channels() != test.channels()) throw Error(ErrorKind::ShapeMismatch, "profile: channel counts differ");

  DatasetProfile p;
  p.name = train.name();
  p.n_classes = train.num_labels();
  p.train_size = train.size();
  p.dim = train.channels();
  p.length = train.max_length();

  std::vector<LabeledItem> all(train.items());
  all.insert(all.end(), test.items().begin(), test.items().end());
  p.prop_miss = missing_proportion(LabeledDataset(train.name(), train.labels(), std::move(all)));

  ImputePolicy common = policy;
  if (!common.pad_to) common.pad_to = std::max(train.max_length(), test.max_length());
  const LabeledDataset train_dense = impute(train, common);
  const LabeledDataset test_dense = impute(test, common);
  p.var_train = dataset_variance(train_dense);
  p.var_test = dataset_variance(test_dense);
  p.im_ratio = imbalance_degree(train);
  p.d_train_test = train_test_distance(train_dense, test_dense);
  return p;
}

std::string profile_csv_header() {
  return "dataset,n_classes,train_size,dim,length,var_train,var_test,im_ratio,d_train_test,prop_miss";
}

std::string profile_csv_row(const DatasetProfile& p) {
  return p.name + "," + std::to_string(p.n_classes) + "," + std::to_string(p.train_size) + "," +
         std::to_string(p.dim) + "," + std::to_string(p.length) + "," + fmt(p.var_train) + "," + fmt(p.var_test) +
         "," + fmt(p.im_ratio) + "," + fmt(p.d_train_test) + "," + fmt(p.prop_miss);
}

}  // namespace mtsaug
