#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtsaug/augment.hpp"
#include "mtsaug/profile.hpp"
#include "mtsaug/rng.hpp"
#include "mtsaug/series.hpp"
#include "mtsaug/ts_format.hpp"

namespace mtsaug {

struct SplitResult {
  LabeledDataset part_a;
  LabeledDataset part_b;
  std::vector<std::string> warnings;  // ClassTooSmall notices
};

/// Per-class split at ratio_a : ratio_b. Items at index >= original_count
/// are synthetic and always go to part_a. A class with a single original
/// member keeps it in part_a and emits a warning. Both parts keep dataset order.
SplitResult split_stratified(const LabeledDataset& ds, std::size_t ratio_a, std::size_t ratio_b, RngStream& rng,
                             std::size_t original_count = static_cast<std::size_t>(-1));

/// A bench column: "none" (no augmentation) or an augmenter.
struct Technique {
  std::string label;
  std::optional<AugmenterSpec> spec;

  static Technique parse(std::string_view text);
};

std::vector<Technique> parse_technique_list(std::string_view text);
std::vector<Technique> default_techniques();

enum class ReportFormat { Markdown, Csv, Json };
std::optional<ReportFormat> parse_report_format(std::string_view text);

struct ExperimentSettings {
  std::vector<Technique> techniques = default_techniques();
  std::size_t runs = 5;
  std::uint64_t seed = 0;
  std::size_t kernels = 10'000;
  std::vector<double> alpha_grid;  // empty: default grid
  ImputePolicy impute;
  ReportFormat format = ReportFormat::Markdown;
  std::filesystem::path out_dir = "results";
  bool pinned_bank = false;        // one bank per dataset instead of one per run
  bool normalize_series = false;   // z-normalize each series channel before the transform
  bool scale_features = true;

  void validate() const;
};

struct DatasetPaths {
  std::filesystem::path train;
  std::filesystem::path test;
};

struct ExperimentConfig {
  std::vector<DatasetPaths> datasets;
  ExperimentSettings settings;
};

/// Flat `key = value` text; `#` starts a comment. Relative dataset paths
/// resolve against `base_dir`.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);
/// Applies one key/value pair with config-file semantics (used for flag overrides).
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir = {});

struct DatasetInput {
  std::string name;
  LabeledDataset train;  // raw: may be ragged or incomplete
  LabeledDataset test;
};

struct CellResult {
  std::string dataset;
  std::string technique;
  std::vector<double> run_accuracies;
  std::vector<double> run_alphas;
  std::vector<std::vector<std::size_t>> train_class_counts;  // per run, after augmentation
  double mean = 0.0;
  double stddev = 0.0;  // population std over runs
  std::optional<std::string> error;
};

struct DatasetSummary {
  std::string name;
  std::optional<DatasetProfile> profile;
  std::string best_technique;  // "none" when no augmenter cell succeeded
  double baseline_mean = 0.0;
  double best_mean = 0.0;
  double improvement_pct = 0.0;
  std::uint64_t test_hash = 0;  // hash of the serialized test set when loaded
  bool test_set_intact = true;  // same hash after all cells ran
  std::optional<std::string> error;
};

struct AuditRow {
  std::string dataset;
  std::string technique;
  std::size_t run = 0;
  SynthesisRecord record;
};

struct ExperimentReport {
  std::vector<std::string> techniques;
  std::vector<DatasetSummary> datasets;
  std::vector<CellResult> cells;
  std::vector<AuditRow> audit;
  double average_improvement = 0.0;

  const CellResult* cell(std::string_view dataset, std::string_view technique) const;
};

/// Seed streams: the augmenter for (dataset, technique, run) draws from
/// root/dataset/technique/run:r; the kernel bank from root/dataset/bank/run:r
/// (or root/dataset/bank/pinned). No stream depends on execution order.
ExperimentReport run_experiment(std::span<const DatasetInput> inputs, const ExperimentSettings& settings);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

DatasetInput load_dataset(const DatasetPaths& paths);

std::string report_table(const ExperimentReport& report, ReportFormat format);
std::string accuracies_csv(const ExperimentReport& report);
std::string audit_csv(const ExperimentReport& report);
std::string profiles_csv(const ExperimentReport& report);

/// Writes report.<md|csv|json>, accuracies.csv, audit.csv and profiles.csv.
void write_outputs(const ExperimentReport& report, const std::filesystem::path& out_dir, ReportFormat format);

/// Splits unquoted comma-separated text into rows of fields.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace mtsaug
