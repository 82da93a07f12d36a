#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mtsaug {

/// One multivariate time series: M channels by T steps, stored channel-major
/// (all of channel 0, then channel 1, ...). Unobserved entries hold 0.0 so
/// two series with the same observed content compare equal.
class Series {
 public:
  /// `observed` may be empty, meaning fully observed.
  Series(std::size_t channels, std::size_t length, std::vector<double> values,
         std::vector<std::uint8_t> observed = {}, std::string id = {});

  static Series from_channels(const std::vector<std::vector<double>>& channels, std::string id = {});

  std::size_t channels() const noexcept { return channels_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::string& id() const noexcept { return id_; }

  double value(std::size_t channel, std::size_t step) const noexcept {
    return values_[channel * length_ + step];
  }
  bool observed(std::size_t channel, std::size_t step) const noexcept {
    return observed_[channel * length_ + step] != 0;
  }
  std::span<const double> channel(std::size_t m) const noexcept {
    return {values_.data() + m * length_, length_};
  }
  std::span<const std::uint8_t> channel_mask(std::size_t m) const noexcept {
    return {observed_.data() + m * length_, length_};
  }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint8_t> mask() const noexcept { return observed_; }

  bool fully_observed() const noexcept { return missing_count_ == 0; }
  std::size_t missing_count() const noexcept { return missing_count_; }

  Series with_id(std::string id) const;

  friend bool operator==(const Series& a, const Series& b) {
    return a.channels_ == b.channels_ && a.length_ == b.length_ && a.values_ == b.values_ &&
           a.observed_ == b.observed_;
  }

 private:
  std::size_t channels_;
  std::size_t length_;
  std::vector<double> values_;
  std::vector<std::uint8_t> observed_;
  std::size_t missing_count_ = 0;
  std::string id_;
};

struct LabeledItem {
  Series series;
  std::size_t label;

  friend bool operator==(const LabeledItem&, const LabeledItem&) = default;
};

/// Ordered (series, label index) pairs plus the label alphabet in file order.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::string name, std::vector<std::string> labels, std::vector<LabeledItem> items);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<LabeledItem>& items() const noexcept { return items_; }
  const LabeledItem& operator[](std::size_t i) const noexcept { return items_[i]; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  std::size_t num_labels() const noexcept { return labels_.size(); }

  /// Channel count shared by every series (0 for an empty dataset).
  std::size_t channels() const noexcept;
  std::size_t max_length() const noexcept;
  bool equal_length() const noexcept;
  bool fully_observed() const noexcept;

  std::optional<std::size_t> label_index(const std::string& name) const;

  /// Items whose label is `label`, in dataset order.
  std::vector<std::size_t> members_of(std::size_t label) const;

  friend bool operator==(const LabeledDataset& a, const LabeledDataset& b) {
    return a.labels_ == b.labels_ && a.items_ == b.items_;
  }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<LabeledItem> items_;
};

std::vector<std::size_t> class_counts(const LabeledDataset& ds);

/// Channel-major concatenation; throws MissingData on any unobserved entry.
std::vector<double> flatten(const Series& s);
Series reshape(std::span<const double> flat, std::size_t channels, std::size_t length, std::string id = {});

/// Population standard deviation of the observed values of each channel.
std::vector<double> per_channel_std(const Series& s);

/// Throws MissingData unless every entry of `s` is observed.
void require_fully_observed(const Series& s, const char* context);

}  // namespace mtsaug
