#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mtsaug/error.hpp"
#include "mtsaug/experiment.hpp"

namespace mtsaug {
namespace {

std::string fixed2(double v) {
  // Avoid printing "-0.00" for tiny negatives.
  if (std::fabs(v) < 0.005) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string shortest(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Accuracies are percentages, as in the published tables.
Table build_table(const ExperimentReport& report) {
  Table t;
  t.header.push_back("Dataset");
  for (const auto& tech : report.techniques) t.header.push_back(tech);
  t.header.push_back("Improvement (%)");
  for (const auto& d : report.datasets) {
    std::vector<std::string> row{d.name};
    for (const auto& tech : report.techniques) {
      const CellResult* c = report.cell(d.name, tech);
      row.push_back(!c || c->error ? "error" : fixed2(c->mean));
    }
    row.push_back(d.error ? "error" : fixed2(d.improvement_pct));
    t.rows.push_back(std::move(row));
  }
  std::vector<std::string> last{"Average Improvement"};
  for (std::size_t i = 0; i < report.techniques.size(); ++i) last.push_back("-");
  last.push_back(fixed2(report.average_improvement));
  t.rows.push_back(std::move(last));
  return t;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string to_markdown(const Table& t) {
  std::string out = "| " + join(t.header, " | ") + " |\n|";
  for (std::size_t i = 0; i < t.header.size(); ++i) out += i == 0 ? "---|" : "---:|";
  out += '\n';
  for (const auto& row : t.rows) out += "| " + join(row, " | ") + " |\n";
  return out;
}

std::string to_csv(const Table& t) {
  std::string out = join(t.header, ",") + '\n';
  for (const auto& row : t.rows) out += join(row, ",") + '\n';
  return out;
}

std::string to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["techniques"] = report.techniques;
  j["datasets"] = nlohmann::json::array();
  for (const auto& d : report.datasets) {
    nlohmann::json dj;
    dj["name"] = d.name;
    nlohmann::json acc = nlohmann::json::object();
    for (const auto& tech : report.techniques) {
      const CellResult* c = report.cell(d.name, tech);
      if (!c || c->error) {
        acc[tech] = {{"error", c && c->error ? *c->error : "missing"}};
      } else {
        acc[tech] = {{"mean", c->mean}, {"std", c->stddev}, {"runs", c->run_accuracies}};
      }
    }
    dj["accuracy"] = acc;
    dj["best_technique"] = d.best_technique;
    dj["improvement_pct"] = d.improvement_pct;
    dj["test_set_intact"] = d.test_set_intact;
    if (d.error) dj["error"] = *d.error;
    j["datasets"].push_back(std::move(dj));
  }
  j["average_improvement"] = report.average_improvement;
  return j.dump(2) + '\n';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

}  // namespace

std::string report_table(const ExperimentReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Markdown: return to_markdown(build_table(report));
    case ReportFormat::Csv: return to_csv(build_table(report));
    case ReportFormat::Json: return to_json(report);
  }
  return {};
}

std::string accuracies_csv(const ExperimentReport& report) {
  std::string out = "dataset,technique,run,accuracy,alpha,train_class_counts\n";
  for (const auto& c : report.cells) {
    for (std::size_t r = 0; r < c.run_accuracies.size(); ++r) {
      std::vector<std::string> counts;
      if (r < c.train_class_counts.size()) {
        for (auto n : c.train_class_counts[r]) counts.push_back(std::to_string(n));
      }
      out += c.dataset + ',' + c.technique + ',' + std::to_string(r) + ',' + shortest(c.run_accuracies[r]) + ',' +
             shortest(c.run_alphas.at(r)) + ',' + join(counts, ";") + '\n';
    }
  }
  return out;
}

std::string audit_csv(const ExperimentReport& report) {
  std::string out = "dataset,technique,run,synthetic_id,parent_ids,parameters\n";
  for (const auto& a : report.audit) {
    std::vector<std::string> params;
    for (const auto& [k, v] : a.record.parameters) params.push_back(k + '=' + shortest(v));
    out += a.dataset + ',' + a.technique + ',' + std::to_string(a.run) + ',' + a.record.synthetic_id + ',' +
           join(a.record.parent_ids, ";") + ',' + join(params, ";") + '\n';
  }
  return out;
}

std::string profiles_csv(const ExperimentReport& report) {
  std::string out = profile_csv_header() + '\n';
  for (const auto& d : report.datasets) {
    if (d.profile) out += profile_csv_row(*d.profile) + '\n';
  }
  return out;
}

void write_outputs(const ExperimentReport& report, const std::filesystem::path& out_dir, ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  const char* ext = format == ReportFormat::Markdown ? "md" : format == ReportFormat::Csv ? "csv" : "json";
  write_file(out_dir / (std::string("report.") + ext), report_table(report, format));
  write_file(out_dir / "accuracies.csv", accuracies_csv(report));
  write_file(out_dir / "audit.csv", audit_csv(report));
  write_file(out_dir / "profiles.csv", profiles_csv(report));
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace mtsaug
