// mtsaug: profile datasets, augment training sets, and run the benchmark sweep.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mtsaug/augment.hpp"
#include "mtsaug/error.hpp"
#include "mtsaug/experiment.hpp"
#include "mtsaug/profile.hpp"
#include "mtsaug/ts_format.hpp"

namespace fs = std::filesystem;
using namespace mtsaug;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kExperiment = 3;

// Thrown for bad flag values so they map to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void print_warnings(const TsFile& f, const fs::path& path) {
  for (const auto& w : f.warnings) std::cerr << path.string() << ": warning: " << w << '\n';
}

ImputePolicy impute_policy(const std::string& method, const std::string& pad) {
  ImputePolicy policy;
  const auto m = parse_impute_method(method);
  if (!m) throw UsageError("--impute: expected linear, forward-fill or zero-fill");
  const auto p = parse_pad_value(pad);
  if (!p) throw UsageError("--pad: expected edge or zero");
  policy.method = *m;
  policy.pad_value = *p;
  return policy;
}

int cmd_profile(const fs::path& train_path, const fs::path& test_path, const ImputePolicy& policy) {
  const TsFile train = read_ts_file(train_path);
  const TsFile test = read_ts_file(test_path);
  print_warnings(train, train_path);
  print_warnings(test, test_path);
  const DatasetProfile p = profile(train.dataset, test.dataset, policy);
  std::cout << profile_csv_header() << '\n' << profile_csv_row(p) << '\n';
  return kOk;
}

int cmd_augment(const fs::path& train_path, const std::string& technique, const fs::path& out_path,
                std::uint64_t seed, const std::optional<fs::path>& audit_path, const ImputePolicy& policy) {
  AugmenterSpec spec;
  try {
    spec = AugmenterSpec::parse(technique);
  } catch (const Error& e) {
    throw UsageError(std::string("--technique: ") + e.what());
  }
  const TsFile train = read_ts_file(train_path);
  print_warnings(train, train_path);
  const LabeledDataset ready = impute(train.dataset, policy);
  const RngStream rng = RngStream(seed, "mtsaug").child(ready.name()).child(spec.label()).child("run:0");
  const BalancedDataset balanced = balance_dataset(ready, spec, rng);

  TsHeader header = train.header;
  header.equal_length = true;
  header.series_length = balanced.data.max_length();
  header.missing = false;
  write_ts_file(out_path, header, balanced.data);

  if (audit_path) {
    ExperimentReport audit;
    for (const auto& rec : balanced.records) audit.audit.push_back({ready.name(), spec.label(), 0, rec});
    std::ofstream out(*audit_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + audit_path->string());
    out << audit_csv(audit);
  }
  std::cerr << "wrote " << balanced.data.size() << " series (" << balanced.records.size() << " synthetic) to "
            << out_path.string() << '\n';
  return kOk;
}

struct BenchFlags {
  std::optional<fs::path> config;
  std::vector<std::string> datasets;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> kernels;
  std::optional<std::string> techniques;
  std::optional<std::string> format;
  std::optional<std::string> out_dir;
  bool pinned_bank = false;
};

int cmd_bench(const BenchFlags& flags) {
  ExperimentConfig cfg;
  if (flags.config) cfg = load_config(*flags.config);  // Config errors here are file parse errors

  // Flags win over the file.
  try {
    const fs::path cwd = fs::current_path();
    for (const auto& d : flags.datasets) apply_setting(cfg, "dataset", d, cwd);
    if (flags.runs) apply_setting(cfg, "runs", std::to_string(*flags.runs));
    if (flags.seed) apply_setting(cfg, "seed", std::to_string(*flags.seed));
    if (flags.kernels) apply_setting(cfg, "kernels", std::to_string(*flags.kernels));
    if (flags.techniques) apply_setting(cfg, "techniques", *flags.techniques);
    if (flags.format) apply_setting(cfg, "format", *flags.format);
    if (flags.out_dir) apply_setting(cfg, "out_dir", *flags.out_dir);
    if (flags.pinned_bank) apply_setting(cfg, "pinned_bank", "true");
    cfg.settings.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (cfg.datasets.empty()) throw UsageError("no datasets: give --config with dataset lines or --dataset");

  std::vector<DatasetInput> inputs;
  for (const auto& paths : cfg.datasets) inputs.push_back(load_dataset(paths));

  const ExperimentReport report = run_experiment(inputs, cfg.settings);
  write_outputs(report, cfg.settings.out_dir, cfg.settings.format);
  std::cout << report_table(report, cfg.settings.format);

  int status = kOk;
  for (const auto& c : report.cells) {
    if (c.error) {
      std::cerr << "error: " << c.dataset << " / " << c.technique << ": " << *c.error << '\n';
      status = kExperiment;
    }
  }
  for (const auto& d : report.datasets) {
    if (!d.test_set_intact) {
      std::cerr << "error: " << d.name << ": test set changed during the experiment\n";
      status = kExperiment;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate time-series augmentation benchmark"};
  app.require_subcommand(1);

  std::string impute_method = "linear";
  std::string pad_value = "edge";

  auto* profile_cmd = app.add_subcommand("profile", "Print dataset characteristics as CSV");
  fs::path p_train, p_test;
  profile_cmd->add_option("train", p_train, "Training .ts file")->required();
  profile_cmd->add_option("test", p_test, "Test .ts file")->required();
  profile_cmd->add_option("--impute", impute_method, "linear | forward-fill | zero-fill");
  profile_cmd->add_option("--pad", pad_value, "edge | zero");

  auto* augment_cmd = app.add_subcommand("augment", "Balance a training set with one technique");
  fs::path a_train, a_out;
  std::string a_technique;
  std::uint64_t a_seed = 0;
  std::optional<fs::path> a_audit;
  augment_cmd->add_option("train", a_train, "Training .ts file")->required();
  augment_cmd->add_option("--technique", a_technique, "e.g. noise_3, smote, time-mask:ratio=0.1")->required();
  augment_cmd->add_option("--out", a_out, "Output .ts file")->required();
  augment_cmd->add_option("--seed", a_seed, "Base seed");
  augment_cmd->add_option("--audit", a_audit, "Write synthesis records as CSV");
  augment_cmd->add_option("--impute", impute_method, "linear | forward-fill | zero-fill");
  augment_cmd->add_option("--pad", pad_value, "edge | zero");

  auto* bench_cmd = app.add_subcommand("bench", "Run the augmentation benchmark");
  BenchFlags bench;
  bench_cmd->add_option("--config", bench.config, "Experiment config file");
  bench_cmd->add_option("--dataset", bench.datasets, "Extra dataset as <train.ts>,<test.ts>");
  bench_cmd->add_option("--runs", bench.runs, "Runs per cell");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--kernels", bench.kernels, "ROCKET kernel count");
  bench_cmd->add_option("--techniques", bench.techniques, "Comma-separated technique list");
  bench_cmd->add_option("--format", bench.format, "markdown | csv | json");
  bench_cmd->add_option("--out-dir", bench.out_dir, "Output directory");
  bench_cmd->add_flag("--pinned-bank", bench.pinned_bank, "Reuse one kernel bank across runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*profile_cmd) return cmd_profile(p_train, p_test, impute_policy(impute_method, pad_value));
    if (*augment_cmd) {
      return cmd_augment(a_train, a_technique, a_out, a_seed, a_audit, impute_policy(impute_method, pad_value));
    }
    if (*bench_cmd) return cmd_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    // Unreadable or malformed inputs count as parse errors.
    if (e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Io || e.kind() == ErrorKind::Parse) return kParse;
    return kExperiment;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExperiment;
  }
  return kUsage;
}
