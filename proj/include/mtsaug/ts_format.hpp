#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtsaug/series.hpp"

namespace mtsaug {

/// Header of a UEA/UCR `.ts` file. Tags are matched case-insensitively;
/// tags this library does not interpret are kept verbatim in `extra_tags`.
struct TsHeader {
  std::string problem_name;
  std::optional<std::size_t> dimensions;
  bool equal_length = true;
  std::optional<std::size_t> series_length;  // unset when variable or undeclared
  bool has_class_labels = true;
  std::vector<std::string> class_label_names;
  std::optional<bool> missing;
  std::optional<bool> univariate;
  std::optional<bool> timestamps;
  std::map<std::string, std::string> extra_tags;  // lower-cased tag -> raw value

  friend bool operator==(const TsHeader&, const TsHeader&) = default;
};

struct TsFile {
  TsHeader header;
  LabeledDataset dataset;
  std::vector<std::string> warnings;  // non-fatal issues such as unknown tags
};

/// Parses `.ts` text. Series ids are "<id_prefix>/<record index>"; the prefix
/// defaults to the problem name. Throws ParseError with 1-based positions.
TsFile parse_ts(std::string_view text, std::string id_prefix = {});
TsFile parse_ts(std::istream& in, std::string id_prefix = {});
TsFile read_ts_file(const std::filesystem::path& path, std::string id_prefix = {});

/// Header describing `ds` exactly (dimensions, lengths, labels, missing flag).
TsHeader header_for(const LabeledDataset& ds, std::string problem_name = {});

/// Emits LF-terminated `.ts` text; observed values use the shortest
/// representation that reparses to the same double. Throws
/// InconsistentHeader when `header` contradicts `ds`.
std::string write_ts(const TsHeader& header, const LabeledDataset& ds);
void write_ts(std::ostream& out, const TsHeader& header, const LabeledDataset& ds);
void write_ts_file(const std::filesystem::path& path, const TsHeader& header, const LabeledDataset& ds);

enum class ImputeMethod { LinearInterpolate, ForwardFill, ZeroFill };
enum class PadValue { Edge, Zero };

struct ImputePolicy {
  ImputeMethod method = ImputeMethod::LinearInterpolate;
  std::optional<std::size_t> pad_to;  // unset: pad to the longest series
  PadValue pad_value = PadValue::Edge;
  bool truncate = false;              // allow pad_to shorter than the longest series
};

/// Fills missing entries and pads every series to a common length. Observed
/// values, channel counts and labels are never changed.
LabeledDataset impute(const LabeledDataset& ds, const ImputePolicy& policy = {});

std::optional<ImputeMethod> parse_impute_method(std::string_view text);
std::optional<PadValue> parse_pad_value(std::string_view text);

}  // namespace mtsaug
