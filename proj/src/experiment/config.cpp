#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "mtsaug/error.hpp"
#include "mtsaug/experiment.hpp"
#include "mtsaug/ridge.hpp"

namespace mtsaug {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      const auto item = trim(s.substr(start, i - start));
      if (!item.empty()) out.push_back(item);
      start = i + 1;
    }
  }
  return out;
}

template <class T>
T parse_integer(std::string_view key, std::string_view value) {
  T v{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorKind::Config, std::string(key) + ": expected a non-negative integer, got '" + std::string(value) + "'");
  }
  return v;
}

double parse_real(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorKind::Config, std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  }
  return v;
}

bool parse_flag(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw Error(ErrorKind::Config, std::string(key) + ": expected true/false, got '" + std::string(value) + "'");
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view p) {
  std::filesystem::path path{std::string(p)};
  return (path.is_relative() && !base.empty()) ? base / path : path;
}

}  // namespace

Technique Technique::parse(std::string_view text) {
  text = trim(text);
  if (text == "none" || text == "baseline") return {"none", std::nullopt};
  try {
    AugmenterSpec spec = AugmenterSpec::parse(text);
    return {spec.label(), std::move(spec)};
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, "technique '" + std::string(text) + "': " + e.what());
  }
}

std::vector<Technique> parse_technique_list(std::string_view text) {
  std::vector<Technique> out;
  for (auto item : split_list(text, ',')) out.push_back(Technique::parse(item));
  return out;
}

std::vector<Technique> default_techniques() {
  return parse_technique_list("none,noise_1,noise_3,noise_5,smote,gaussian-cov");
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "markdown" || text == "md") return ReportFormat::Markdown;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  return std::nullopt;
}

void ExperimentSettings::validate() const {
  if (runs < 1) throw Error(ErrorKind::Config, "runs must be at least 1");
  if (kernels < 1) throw Error(ErrorKind::Config, "kernels must be at least 1");
  if (techniques.empty()) throw Error(ErrorKind::Config, "technique list is empty");
  bool has_none = false;
  for (std::size_t i = 0; i < techniques.size(); ++i) {
    has_none = has_none || !techniques[i].spec;
    for (std::size_t j = 0; j < i; ++j) {
      if (techniques[i].label == techniques[j].label) {
        throw Error(ErrorKind::Config, "technique '" + techniques[i].label + "' listed twice");
      }
    }
  }
  if (!has_none) throw Error(ErrorKind::Config, "technique list must include 'none'");
  for (double a : alpha_grid) {
    if (!(a > 0.0)) throw Error(ErrorKind::Config, "alpha grid values must be positive");
  }
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir) {
  key = trim(key);
  value = trim(value);
  auto& s = cfg.settings;
  if (key == "dataset") {
    auto parts = split_list(value, ',');
    if (parts.size() != 2) throw Error(ErrorKind::Config, "dataset: expected '<train.ts>,<test.ts>'");
    cfg.datasets.push_back({resolve(base_dir, parts[0]), resolve(base_dir, parts[1])});
  } else if (key == "techniques") {
    s.techniques = parse_technique_list(value);
  } else if (key == "runs") {
    s.runs = parse_integer<std::size_t>(key, value);
  } else if (key == "seed") {
    s.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "kernels") {
    s.kernels = parse_integer<std::size_t>(key, value);
  } else if (key == "alpha_grid") {
    s.alpha_grid.clear();
    if (value != "default") {
      for (auto item : split_list(value, ',')) s.alpha_grid.push_back(parse_real(key, item));
    }
  } else if (key == "impute") {
    const auto m = parse_impute_method(value);
    if (!m) throw Error(ErrorKind::Config, "impute: expected linear, forward-fill or zero-fill");
    s.impute.method = *m;
  } else if (key == "pad") {
    const auto p = parse_pad_value(value);
    if (!p) throw Error(ErrorKind::Config, "pad: expected edge or zero");
    s.impute.pad_value = *p;
  } else if (key == "pad_to") {
    if (value == "max") {
      s.impute.pad_to.reset();
    } else {
      s.impute.pad_to = parse_integer<std::size_t>(key, value);
    }
  } else if (key == "truncate") {
    s.impute.truncate = parse_flag(key, value);
  } else if (key == "format") {
    const auto f = parse_report_format(value);
    if (!f) throw Error(ErrorKind::Config, "format: expected markdown, csv or json");
    s.format = *f;
  } else if (key == "out_dir" || key == "out-dir") {
    s.out_dir = resolve(base_dir, value);
  } else if (key == "pinned_bank") {
    s.pinned_bank = parse_flag(key, value);
  } else if (key == "normalize_series") {
    s.normalize_series = parse_flag(key, value);
  } else if (key == "scale_features") {
    s.scale_features = parse_flag(key, value);
  } else {
    throw Error(ErrorKind::Config, "unknown key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Config, "line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1), base_dir);
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  cfg.settings.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_config(text, path.parent_path());
}

}  // namespace mtsaug
