#include <algorithm>
#include <cmath>
#include <numeric>

#include "mtsaug/error.hpp"
#include "mtsaug/experiment.hpp"
#include "mtsaug/ridge.hpp"
#include "mtsaug/rocket.hpp"

namespace mtsaug {
namespace {

std::vector<std::size_t> labels_of(std::span<const LabeledItem> items) {
  std::vector<std::size_t> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.label);
  return out;
}

std::uint64_t hash_dataset(const LabeledDataset& ds) { return fnv1a64(write_ts(header_for(ds), ds)); }

LabeledDataset normalize_all(const LabeledDataset& ds) {
  std::vector<LabeledItem> items;
  items.reserve(ds.size());
  for (const auto& item : ds.items()) items.push_back({znormalize(item.series), item.label});
  return LabeledDataset(ds.name(), ds.labels(), std::move(items));
}

void finish_cell(CellResult& cell) {
  if (cell.run_accuracies.empty()) return;
  const auto n = static_cast<double>(cell.run_accuracies.size());
  cell.mean = std::accumulate(cell.run_accuracies.begin(), cell.run_accuracies.end(), 0.0) / n;
  double ss = 0.0;
  for (double a : cell.run_accuracies) ss += (a - cell.mean) * (a - cell.mean);
  cell.stddev = std::sqrt(ss / n);
}

// Fits on `train_features` and scores the untouched test set.
double evaluate(const FeatureMatrix& train_features, std::span<const std::size_t> train_labels,
                const FeatureMatrix& test_features, std::span<const std::size_t> test_labels,
                const std::vector<double>& grid, const LabeledDataset& train, bool scale_features, double* alpha_out) {
  const RidgeModel model = ridge_fit(train_features, train_labels, grid, train.labels(), scale_features);
  *alpha_out = model.alpha;
  return accuracy(ridge_predict(model, test_features), test_labels);
}

}  // namespace

const CellResult* ExperimentReport::cell(std::string_view dataset, std::string_view technique) const {
  for (const auto& c : cells) {
    if (c.dataset == dataset && c.technique == technique) return &c;
  }
  return nullptr;
}

DatasetInput load_dataset(const DatasetPaths& paths) {
  TsFile train = read_ts_file(paths.train);
  TsFile test = read_ts_file(paths.test);
  if (train.dataset.labels() != test.dataset.labels()) {
    throw Error(ErrorKind::InconsistentHeader, "train and test files declare different class labels");
  }
  std::string name = train.dataset.name();
  return {std::move(name), std::move(train.dataset), std::move(test.dataset)};
}

ExperimentReport run_experiment(std::span<const DatasetInput> inputs, const ExperimentSettings& settings) {
  settings.validate();
  const std::vector<double> grid = settings.alpha_grid.empty() ? default_alpha_grid() : settings.alpha_grid;
  const RngStream root(settings.seed, "mtsaug");

  ExperimentReport report;
  for (const auto& t : settings.techniques) report.techniques.push_back(t.label);

  for (const DatasetInput& input : inputs) {
    DatasetSummary summary;
    summary.name = input.name;
    summary.test_hash = hash_dataset(input.test);
    const RngStream ds_root = root.child(input.name);

    std::vector<CellResult> cells;
    for (const auto& t : settings.techniques) {
      CellResult cell;
      cell.dataset = input.name;
      cell.technique = t.label;
      cells.push_back(std::move(cell));
    }

    try {
      summary.profile = profile(input.train, input.test, settings.impute);

      ImputePolicy policy = settings.impute;
      if (!policy.pad_to) policy.pad_to = std::max(input.train.max_length(), input.test.max_length());
      LabeledDataset train = impute(input.train, policy);
      LabeledDataset test = impute(input.test, policy);
      if (settings.normalize_series) {
        train = normalize_all(train);
        test = normalize_all(test);
      }
      const std::vector<std::size_t> train_labels = labels_of(train.items());
      const std::vector<std::size_t> test_labels = labels_of(test.items());
      const std::size_t length = *policy.pad_to;

      std::optional<KernelBank> pinned;
      if (settings.pinned_bank) {
        RngStream bank_rng = ds_root.child("bank").child("pinned");
        pinned = generate_kernels(settings.kernels, length, train.channels(), bank_rng);
      }

      for (std::size_t run = 0; run < settings.runs; ++run) {
        const std::string run_label = "run:" + std::to_string(run);
        KernelBank bank;
        if (pinned) {
          bank = *pinned;
        } else {
          RngStream bank_rng = ds_root.child("bank").child(run_label);
          bank = generate_kernels(settings.kernels, length, train.channels(), bank_rng);
        }
        // Originals and the test set are transformed once per run; each
        // technique only transforms its synthetic tail.
        const FeatureMatrix train_features = transform(train, bank);
        const FeatureMatrix test_features = transform(test, bank);

        for (std::size_t ti = 0; ti < settings.techniques.size(); ++ti) {
          const Technique& tech = settings.techniques[ti];
          CellResult& cell = cells[ti];
          if (cell.error) continue;
          try {
            double alpha = 0.0;
            double acc = 0.0;
            if (!tech.spec) {
              acc = evaluate(train_features, train_labels, test_features, test_labels, grid, train,
                             settings.scale_features, &alpha);
              cell.train_class_counts.push_back(class_counts(train));
            } else {
              const RngStream aug_rng = ds_root.child(tech.label).child(run_label);
              const BalancedDataset balanced = balance_dataset(train, *tech.spec, aug_rng);
              const std::span<const LabeledItem> synthetic =
                  std::span<const LabeledItem>(balanced.data.items()).subspan(balanced.original_count);
              FeatureMatrix features(train_features.rows() + static_cast<Eigen::Index>(synthetic.size()),
                                     train_features.cols());
              features.topRows(train_features.rows()) = train_features;
              if (!synthetic.empty()) features.bottomRows(static_cast<Eigen::Index>(synthetic.size())) = transform(synthetic, bank);
              const auto labels = labels_of(balanced.data.items());
              acc = evaluate(features, labels, test_features, test_labels, grid, train, settings.scale_features, &alpha);
              cell.train_class_counts.push_back(class_counts(balanced.data));
              for (const auto& rec : balanced.records) report.audit.push_back({input.name, tech.label, run, rec});
            }
            cell.run_accuracies.push_back(acc);
            cell.run_alphas.push_back(alpha);
          } catch (const std::exception& e) {
            cell.error = std::string(e.what()) + " (run " + std::to_string(run) + ")";
          }
        }
      }
    } catch (const std::exception& e) {
      summary.error = e.what();
      for (auto& cell : cells) {
        if (!cell.error) cell.error = e.what();
      }
    }

    for (auto& cell : cells) finish_cell(cell);

    const CellResult* baseline = nullptr;
    const CellResult* best = nullptr;
    for (std::size_t ti = 0; ti < cells.size(); ++ti) {
      if (cells[ti].error) continue;
      if (!settings.techniques[ti].spec) {
        baseline = &cells[ti];
      } else if (!best || cells[ti].mean > best->mean) {
        best = &cells[ti];
      }
    }
    if (baseline) {
      summary.baseline_mean = baseline->mean;
      summary.best_technique = best ? best->technique : "none";
      summary.best_mean = best ? best->mean : baseline->mean;
      summary.improvement_pct =
          baseline->mean > 0.0 ? relative_gain(summary.baseline_mean, summary.best_mean).relative_gain_pct : 0.0;
    } else if (!summary.error) {
      summary.error = "baseline cell failed";
    }
    summary.test_set_intact = hash_dataset(input.test) == summary.test_hash;
    report.cells.insert(report.cells.end(), cells.begin(), cells.end());
    report.datasets.push_back(std::move(summary));
  }

  double sum = 0.0;
  std::size_t counted = 0;
  for (const auto& d : report.datasets) {
    if (d.error) continue;
    sum += d.improvement_pct;
    ++counted;
  }
  report.average_improvement = counted ? sum / static_cast<double>(counted) : 0.0;
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.settings.validate();
  std::vector<DatasetInput> inputs;
  inputs.reserve(cfg.datasets.size());
  for (const auto& paths : cfg.datasets) inputs.push_back(load_dataset(paths));
  return run_experiment(inputs, cfg.settings);
}

}  // namespace mtsaug
