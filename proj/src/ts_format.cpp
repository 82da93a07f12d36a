#include "mtsaug/ts_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "mtsaug/error.hpp"

namespace mtsaug {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

// Half-open [begin, end) byte range within a line, so columns stay known.
struct Span {
  std::size_t begin;
  std::size_t end;
};

Span trim(std::string_view line, Span s) {
  while (s.begin < s.end && is_space(line[s.begin])) ++s.begin;
  while (s.end > s.begin && is_space(line[s.end - 1])) --s.end;
  return s;
}

std::string_view view(std::string_view line, Span s) { return line.substr(s.begin, s.end - s.begin); }

std::vector<Span> split(std::string_view line, Span s, char sep) {
  std::vector<Span> out;
  std::size_t start = s.begin;
  for (std::size_t i = s.begin; i < s.end; ++i) {
    if (line[i] == sep) {
      out.push_back({start, i});
      start = i + 1;
    }
  }
  out.push_back({start, s.end});
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<bool> parse_bool(std::string_view s) {
  const std::string l = lower(s);
  if (l == "true") return true;
  if (l == "false") return false;
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view text, std::string id_prefix) : text_(text), id_prefix_(std::move(id_prefix)) {}

  TsFile run() {
    bool in_data = false;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t eol = text_.find('\n', pos);
      if (eol == std::string_view::npos) eol = text_.size();
      std::string_view line = text_.substr(pos, eol - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no_;
      pos = eol + 1;

      const Span body = trim(line, {0, line.size()});
      if (body.begin == body.end) continue;
      const char first = line[body.begin];
      if (first == '%' || first == '#') continue;

      if (!in_data) {
        if (first != '@') {
          throw ParseError(ParseErrorKind::MissingDataSection, line_no_, body.begin + 1,
                           "record found before @data");
        }
        in_data = header_line(line, body);
      } else {
        record(line, body);
      }
      if (eol == text_.size()) break;
    }
    if (!in_data) throw ParseError(ParseErrorKind::MissingDataSection, line_no_, 1, "no @data section");

    std::string name = header_.problem_name;
    return TsFile{header_, LabeledDataset(std::move(name), header_.class_label_names, std::move(items_)),
                  std::move(warnings_)};
  }

 private:
  // Returns true when the line is @data.
  bool header_line(std::string_view line, Span body) {
    std::size_t tag_end = body.begin + 1;
    while (tag_end < body.end && !is_space(line[tag_end])) ++tag_end;
    const std::string tag = lower(line.substr(body.begin + 1, tag_end - body.begin - 1));
    const Span value_span = trim(line, {tag_end, body.end});
    const std::string_view value = view(line, value_span);
    const std::size_t col = value_span.begin + 1;

    auto need_bool = [&](std::optional<bool>& field) {
      const auto b = parse_bool(value);
      if (!b) throw ParseError(ParseErrorKind::MalformedHeader, line_no_, col, "@" + tag + " expects true/false");
      field = *b;
    };
    auto need_size = [&]() -> std::size_t {
      std::size_t n = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || ptr != value.data() + value.size() || n == 0) {
        throw ParseError(ParseErrorKind::MalformedHeader, line_no_, col, "@" + tag + " expects a positive integer");
      }
      return n;
    };

    if (tag == "data") {
      if (header_.has_class_labels && header_.class_label_names.empty()) {
        throw ParseError(ParseErrorKind::MalformedHeader, line_no_, body.begin + 1,
                         "@classLabel true requires at least one label");
      }
      return true;
    }
    if (tag == "problemname") {
      header_.problem_name = std::string(value);
      if (id_prefix_.empty()) id_prefix_ = header_.problem_name;
    } else if (tag == "timestamps") {
      need_bool(header_.timestamps);
      if (*header_.timestamps) {
        throw ParseError(ParseErrorKind::Unsupported, line_no_, col, "timestamped records are not supported");
      }
    } else if (tag == "missing") {
      need_bool(header_.missing);
    } else if (tag == "univariate") {
      need_bool(header_.univariate);
    } else if (tag == "dimensions" || tag == "dimension") {
      header_.dimensions = need_size();
    } else if (tag == "equallength") {
      std::optional<bool> b;
      need_bool(b);
      header_.equal_length = *b;
    } else if (tag == "serieslength") {
      header_.series_length = need_size();
    } else if (tag == "classlabel") {
      auto parts = words(value);
      if (parts.empty()) throw ParseError(ParseErrorKind::MalformedHeader, line_no_, col, "@classLabel needs true/false");
      const auto b = parse_bool(parts.front());
      if (!b) throw ParseError(ParseErrorKind::MalformedHeader, line_no_, col, "@classLabel expects true/false");
      if (!*b) {
        throw ParseError(ParseErrorKind::Unsupported, line_no_, col, "unlabeled datasets are not supported");
      }
      header_.has_class_labels = true;
      header_.class_label_names.assign(parts.begin() + 1, parts.end());
      for (std::size_t i = 0; i < header_.class_label_names.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (header_.class_label_names[i] == header_.class_label_names[j]) {
            throw ParseError(ParseErrorKind::MalformedHeader, line_no_, col,
                             "duplicate class label '" + header_.class_label_names[i] + "'");
          }
        }
      }
    } else if (tag == "targetlabel") {
      const auto b = parse_bool(value);
      if (b && *b) throw ParseError(ParseErrorKind::Unsupported, line_no_, col, "regression targets are not supported");
      header_.extra_tags[tag] = std::string(value);
    } else {
      header_.extra_tags[tag] = std::string(value);
      warnings_.push_back("UnknownTag: @" + tag + " at line " + std::to_string(line_no_));
    }
    return false;
  }

  void record(std::string_view line, Span body) {
    std::vector<Span> fields = split(line, body, ':');
    Span label_span{0, 0};
    if (header_.has_class_labels) {
      if (fields.size() < 2) {
        throw ParseError(ParseErrorKind::RaggedRecord, line_no_, body.begin + 1, "record has no class label field");
      }
      label_span = trim(line, fields.back());
      fields.pop_back();
    }
    const std::size_t channels = fields.size();
    const std::size_t expected = header_.dimensions ? *header_.dimensions : (inferred_dims_ ? *inferred_dims_ : channels);
    if (channels != expected) {
      throw ParseError(ParseErrorKind::RaggedRecord, line_no_, body.begin + 1,
                       "record has " + std::to_string(channels) + " channels, expected " + std::to_string(expected));
    }
    inferred_dims_ = channels;

    std::vector<double> values;
    std::vector<std::uint8_t> observed;
    std::size_t length = 0;
    for (std::size_t c = 0; c < channels; ++c) {
      const auto tokens = split(line, fields[c], ',');
      if (c == 0) {
        length = tokens.size();
      } else if (tokens.size() != length) {
        throw ParseError(ParseErrorKind::RaggedRecord, line_no_, fields[c].begin + 1,
                         "channel " + std::to_string(c) + " has " + std::to_string(tokens.size()) +
                             " values, channel 0 has " + std::to_string(length));
      }
      for (const Span raw : tokens) {
        const Span tok = trim(line, raw);
        const std::string_view s = view(line, tok);
        if (s == "?" || s == "NaN" || s == "nan" || s == "NAN") {
          values.push_back(0.0);
          observed.push_back(0);
          continue;
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
          throw ParseError(ParseErrorKind::NonNumericValue, line_no_, tok.begin + 1,
                           "cannot parse '" + std::string(s) + "' as a number");
        }
        values.push_back(v);
        observed.push_back(1);
      }
    }

    std::size_t label = 0;
    if (header_.has_class_labels) {
      const std::string name(view(line, label_span));
      const auto it = std::find(header_.class_label_names.begin(), header_.class_label_names.end(), name);
      if (it == header_.class_label_names.end()) {
        throw ParseError(ParseErrorKind::UnknownLabel, line_no_, label_span.begin + 1,
                         "label '" + name + "' not declared in @classLabel");
      }
      label = static_cast<std::size_t>(it - header_.class_label_names.begin());
    }

    std::string id = id_prefix_ + "/" + std::to_string(items_.size());
    items_.push_back({Series(channels, length, std::move(values), std::move(observed), std::move(id)), label});
  }

  std::string_view text_;
  std::string id_prefix_;
  std::size_t line_no_ = 0;
  TsHeader header_;
  std::optional<std::size_t> inferred_dims_;
  std::vector<LabeledItem> items_;
  std::vector<std::string> warnings_;
};

void append_double(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

TsFile parse_ts(std::string_view text, std::string id_prefix) {
  return Parser(text, std::move(id_prefix)).run();
}

TsFile parse_ts(std::istream& in, std::string id_prefix) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_ts(std::string_view(text), std::move(id_prefix));
}

TsFile read_ts_file(const std::filesystem::path& path, std::string id_prefix) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  if (id_prefix.empty()) id_prefix = path.stem().string();
  TsFile file = parse_ts(in, std::move(id_prefix));
  if (file.header.problem_name.empty()) {
    file.dataset = LabeledDataset(path.stem().string(), file.dataset.labels(), file.dataset.items());
  }
  return file;
}

TsHeader header_for(const LabeledDataset& ds, std::string problem_name) {
  TsHeader h;
  h.problem_name = problem_name.empty() ? ds.name() : std::move(problem_name);
  h.timestamps = false;
  h.missing = !ds.fully_observed();
  if (!ds.empty()) {
    h.dimensions = ds.channels();
    h.univariate = ds.channels() == 1;
  }
  h.equal_length = ds.equal_length();
  if (h.equal_length && !ds.empty()) h.series_length = ds.max_length();
  h.has_class_labels = true;
  h.class_label_names = ds.labels();
  return h;
}

void write_ts(std::ostream& out, const TsHeader& header, const LabeledDataset& ds) {
  out << write_ts(header, ds);
}

std::string write_ts(const TsHeader& h, const LabeledDataset& ds) {
  if (!h.has_class_labels) throw Error(ErrorKind::InconsistentHeader, "writer requires class labels");
  if (h.class_label_names != ds.labels()) throw Error(ErrorKind::InconsistentHeader, "label names differ from dataset");
  if (!ds.empty()) {
    if (h.dimensions && *h.dimensions != ds.channels()) {
      throw Error(ErrorKind::InconsistentHeader, "declared dimensions differ from dataset");
    }
    if (h.equal_length && !ds.equal_length()) {
      throw Error(ErrorKind::InconsistentHeader, "header declares equal length but series lengths differ");
    }
    if (h.series_length && (!ds.equal_length() || *h.series_length != ds.max_length())) {
      throw Error(ErrorKind::InconsistentHeader, "declared series length differs from dataset");
    }
    if (h.missing && !*h.missing && !ds.fully_observed()) {
      throw Error(ErrorKind::InconsistentHeader, "header declares no missing values but dataset has some");
    }
  }

  std::string out;
  auto tag = [&](std::string_view name, std::string_view value) {
    out += '@';
    out += name;
    if (!value.empty()) {
      out += ' ';
      out += value;
    }
    out += '\n';
  };
  auto flag = [](bool b) { return b ? "true" : "false"; };

  if (!h.problem_name.empty()) tag("problemName", h.problem_name);
  if (h.timestamps) tag("timeStamps", flag(*h.timestamps));
  if (h.missing) tag("missing", flag(*h.missing));
  if (h.univariate) tag("univariate", flag(*h.univariate));
  if (h.dimensions) tag("dimensions", std::to_string(*h.dimensions));
  tag("equalLength", flag(h.equal_length));
  if (h.series_length) tag("seriesLength", std::to_string(*h.series_length));
  std::string labels = "true";
  for (const auto& l : h.class_label_names) labels += " " + l;
  tag("classLabel", labels);
  for (const auto& [k, v] : h.extra_tags) tag(k, v);
  tag("data", "");

  for (const auto& item : ds.items()) {
    const Series& s = item.series;
    for (std::size_t m = 0; m < s.channels(); ++m) {
      if (m > 0) out += ':';
      for (std::size_t t = 0; t < s.length(); ++t) {
        if (t > 0) out += ',';
        if (s.observed(m, t)) {
          append_double(out, s.value(m, t));
        } else {
          out += '?';
        }
      }
    }
    out += ':';
    out += ds.labels()[item.label];
    out += '\n';
  }
  return out;
}

void write_ts_file(const std::filesystem::path& path, const TsHeader& header, const LabeledDataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_ts(out, header, ds);
}

}  // namespace mtsaug
