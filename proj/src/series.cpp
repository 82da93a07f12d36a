#include "mtsaug/series.hpp"

#include <algorithm>
#include <cmath>

#include "mtsaug/error.hpp"

namespace mtsaug {

Series::Series(std::size_t channels, std::size_t length, std::vector<double> values,
               std::vector<std::uint8_t> observed, std::string id)
    : channels_(channels),
      length_(length),
      values_(std::move(values)),
      observed_(std::move(observed)),
      id_(std::move(id)) {
  if (channels_ == 0 || length_ == 0) {
    throw Error(ErrorKind::InvalidArgument, "series needs at least one channel and one step");
  }
  if (values_.size() != channels_ * length_) {
    throw Error(ErrorKind::ShapeMismatch, "value count does not match channels x length");
  }
  if (observed_.empty()) {
    observed_.assign(values_.size(), 1);
  } else if (observed_.size() != values_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "mask shape does not match values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (observed_[i] == 0) {
      values_[i] = 0.0;
      ++missing_count_;
    } else {
      observed_[i] = 1;
      if (!std::isfinite(values_[i])) {
        throw Error(ErrorKind::InvalidArgument, "observed value is not finite");
      }
    }
  }
}

Series Series::from_channels(const std::vector<std::vector<double>>& channels, std::string id) {
  if (channels.empty()) throw Error(ErrorKind::InvalidArgument, "series needs at least one channel");
  const std::size_t length = channels.front().size();
  std::vector<double> flat;
  flat.reserve(channels.size() * length);
  for (const auto& c : channels) {
    if (c.size() != length) throw Error(ErrorKind::ShapeMismatch, "channels differ in length");
    flat.insert(flat.end(), c.begin(), c.end());
  }
  return Series(channels.size(), length, std::move(flat), {}, std::move(id));
}

Series Series::with_id(std::string id) const {
  Series copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

LabeledDataset::LabeledDataset(std::string name, std::vector<std::string> labels, std::vector<LabeledItem> items)
    : name_(std::move(name)), labels_(std::move(labels)), items_(std::move(items)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = i + 1; j < labels_.size(); ++j) {
      if (labels_[i] == labels_[j]) throw Error(ErrorKind::InvalidArgument, "duplicate label '" + labels_[i] + "'");
    }
  }
  for (const auto& item : items_) {
    if (item.label >= labels_.size()) throw Error(ErrorKind::InvalidArgument, "label index out of range");
    if (item.series.channels() != items_.front().series.channels()) {
      throw Error(ErrorKind::ShapeMismatch, "series differ in channel count");
    }
  }
}

std::size_t LabeledDataset::channels() const noexcept {
  return items_.empty() ? 0 : items_.front().series.channels();
}

std::size_t LabeledDataset::max_length() const noexcept {
  std::size_t t = 0;
  for (const auto& item : items_) t = std::max(t, item.series.length());
  return t;
}

bool LabeledDataset::equal_length() const noexcept {
  return std::all_of(items_.begin(), items_.end(), [&](const LabeledItem& item) {
    return item.series.length() == items_.front().series.length();
  });
}

bool LabeledDataset::fully_observed() const noexcept {
  return std::all_of(items_.begin(), items_.end(),
                     [](const LabeledItem& item) { return item.series.fully_observed(); });
}

std::optional<std::size_t> LabeledDataset::label_index(const std::string& name) const {
  const auto it = std::find(labels_.begin(), labels_.end(), name);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::size_t> LabeledDataset::members_of(std::size_t label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].label == label) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> class_counts(const LabeledDataset& ds) {
  std::vector<std::size_t> counts(ds.num_labels(), 0);
  for (const auto& item : ds.items()) ++counts[item.label];
  return counts;
}

void require_fully_observed(const Series& s, const char* context) {
  if (!s.fully_observed()) {
    throw Error(ErrorKind::MissingData, std::string(context) + ": series '" + s.id() + "' has missing values");
  }
}

std::vector<double> flatten(const Series& s) {
  require_fully_observed(s, "flatten");
  return {s.values().begin(), s.values().end()};
}

Series reshape(std::span<const double> flat, std::size_t channels, std::size_t length, std::string id) {
  return Series(channels, length, std::vector<double>(flat.begin(), flat.end()), {}, std::move(id));
}

std::vector<double> per_channel_std(const Series& s) {
  std::vector<double> out(s.channels());
  for (std::size_t m = 0; m < s.channels(); ++m) {
    const auto values = s.channel(m);
    const auto mask = s.channel_mask(m);
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    // Welford
    for (std::size_t t = 0; t < values.size(); ++t) {
      if (!mask[t]) continue;
      ++n;
      const double delta = values[t] - mean;
      mean += delta / static_cast<double>(n);
      m2 += delta * (values[t] - mean);
    }
    if (n == 0) {
      throw Error(ErrorKind::MissingData, "per_channel_std: channel " + std::to_string(m) + " is fully missing");
    }
    out[m] = std::sqrt(std::max(0.0, m2 / static_cast<double>(n)));
  }
  return out;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MissingData: return "MissingData";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotADistribution: return "NotADistribution";
    case ErrorKind::ZeroBaseline: return "ZeroBaseline";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::RatioOutOfRange: return "RatioOutOfRange";
    case ErrorKind::SeriesTooShort: return "SeriesTooShort";
    case ErrorKind::ChannelOutOfRange: return "ChannelOutOfRange";
    case ErrorKind::SingleClass: return "SingleClass";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::InconsistentHeader: return "InconsistentHeader";
    case ErrorKind::AllMissingChannel: return "AllMissingChannel";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

const char* to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::MissingDataSection: return "MissingDataSection";
    case ParseErrorKind::RaggedRecord: return "RaggedRecord";
    case ParseErrorKind::NonNumericValue: return "NonNumericValue";
    case ParseErrorKind::UnknownLabel: return "UnknownLabel";
    case ParseErrorKind::MalformedHeader: return "MalformedHeader";
    case ParseErrorKind::Unsupported: return "Unsupported";
  }
  return "ParseError";
}

}  // namespace mtsaug
