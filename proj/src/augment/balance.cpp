#include <algorithm>
#include <variant>

#include "mtsaug/augment.hpp"
#include "mtsaug/error.hpp"
#include "mtsaug/kernels.hpp"

namespace mtsaug {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Applies a single-series technique to a parent drawn uniformly (with
// replacement) from the class.
std::vector<SyntheticItem> per_series(const LabeledDataset& ds, std::size_t class_idx, std::size_t count,
                                      const AugmenterSpec& spec, RngStream& rng) {
  const auto members = ds.members_of(class_idx);
  if (members.empty()) throw Error(ErrorKind::EmptyClass, "class '" + ds.labels()[class_idx] + "' is empty");
  const std::string technique = spec.technique();
  std::vector<SyntheticItem> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const Series& parent = ds[members[rng.below(members.size())]].series;
    DrawLog log;
    Series s = std::visit(
        Overloaded{
            [&](const NoiseParams& p) { return inject_noise(parent, p.level, rng, &log); },
            [&](const ScaleParams& p) { return scale(parent, p.low, p.high, rng, &log); },
            [&](const RotateParams&) { return rotate(parent, rng, &log); },
            [&](const SliceParams& p) { return slice_resize(parent, p.ratio, rng, &log); },
            [&](const PermuteParams& p) { return permute_segments(parent, p.segments, rng, &log); },
            [&](const TimeMaskParams& p) { return time_mask(parent, p.ratio, rng, p.fill, &log); },
            [&](const FreqMaskParams& p) { return freq_mask(parent, p.ratio, rng, &log); },
            [&](const WindowWarpParams& p) { return window_warp(parent, p.window_ratio, p.scales, rng, &log); },
            [&](const auto&) -> Series { throw Error(ErrorKind::InvalidArgument, "not a per-series technique"); },
        },
        spec.kind);
    SynthesisRecord rec;
    rec.synthetic_id = technique + "/" + ds.labels()[class_idx] + "/" + std::to_string(j);
    rec.parent_ids.push_back(parent.id());
    rec.technique = technique;
    rec.parameters = std::move(log);
    out.push_back({s.with_id(rec.synthetic_id), std::move(rec)});
  }
  return out;
}

}  // namespace

BalancedDataset balance_dataset(const LabeledDataset& ds, const AugmenterSpec& spec, const RngStream& rng) {
  if (ds.empty()) throw Error(ErrorKind::EmptyDataset, "balance_dataset: dataset is empty");
  if (!ds.fully_observed()) throw Error(ErrorKind::MissingData, "balance_dataset: impute before augmenting");
  if (!ds.equal_length()) throw Error(ErrorKind::ShapeMismatch, "balance_dataset: series lengths differ");
  spec.validate();

  const auto counts = class_counts(ds);
  const std::size_t target = *std::max_element(counts.begin(), counts.end());

  BalancedDataset out;
  out.original_count = ds.size();
  std::vector<LabeledItem> items(ds.items());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    // A class absent from the training set has nothing to oversample from.
    if (counts[c] == 0 || counts[c] == target) continue;
    const std::size_t deficit = target - counts[c];
    RngStream class_rng = rng.child("class:" + std::to_string(c));
    std::vector<SyntheticItem> made;
    if (const auto* p = std::get_if<GaussianCovParams>(&spec.kind)) {
      made = gaussian_cov_synthesize(ds, c, deficit, p->shrinkage, class_rng);
    } else if (std::holds_alternative<SmoteParams>(spec.kind)) {
      made = smote_synthesize(ds, c, deficit, class_rng);
    } else {
      made = per_series(ds, c, deficit, spec, class_rng);
    }
    for (auto& m : made) {
      items.push_back({std::move(m.series), c});
      out.records.push_back(std::move(m.record));
    }
  }
  out.data = LabeledDataset(ds.name(), ds.labels(), std::move(items));
  return out;
}

std::vector<NoiseCalibration> calibrate_noise_level(const LabeledDataset& ds, std::span<const double> levels,
                                                    std::size_t trials, const RngStream& rng) {
  if (ds.num_labels() < 2) throw Error(ErrorKind::InvalidArgument, "calibrate_noise_level: needs two or more classes");
  if (levels.empty()) throw Error(ErrorKind::InvalidArgument, "calibrate_noise_level: no levels given");
  if (!std::is_sorted(levels.begin(), levels.end())) {
    throw Error(ErrorKind::InvalidArgument, "calibrate_noise_level: levels must be ascending");
  }
  if (!ds.fully_observed() || !ds.equal_length()) {
    throw Error(ErrorKind::MissingData, "calibrate_noise_level: dataset must be imputed first");
  }

  std::vector<double> originals;
  originals.reserve(ds.size() * ds[0].series.size());
  for (const auto& item : ds.items()) {
    originals.insert(originals.end(), item.series.values().begin(), item.series.values().end());
  }
  const std::size_t d = ds[0].series.size();
  const kernels::RowBlock reference{originals, ds.size(), d};

  std::vector<NoiseCalibration> out;
  for (std::size_t c = 0; c < ds.num_labels(); ++c) {
    const auto members = ds.members_of(c);
    if (members.empty()) {
      throw Error(ErrorKind::EmptyClass, "calibrate_noise_level: class '" + ds.labels()[c] + "' is empty");
    }
    NoiseCalibration cal;
    cal.label = c;
    const RngStream class_rng = rng.child("class:" + std::to_string(c));
    std::optional<double> best;
    for (std::size_t li = 0; li < levels.size(); ++li) {
      RngStream draw = class_rng.child("level:" + std::to_string(li));
      std::vector<double> samples;
      samples.reserve(trials * d);
      for (std::size_t k = 0; k < trials; ++k) {
        const Series noisy = inject_noise(ds[members[draw.below(members.size())]].series, levels[li], draw);
        samples.insert(samples.end(), noisy.values().begin(), noisy.values().end());
      }
      const auto nearest = kernels::nearest_rows({samples, trials, d}, reference);
      const auto violations = static_cast<std::size_t>(
          std::count_if(nearest.begin(), nearest.end(), [&](std::size_t j) { return ds[j].label != c; }));
      cal.violations.push_back(violations);
      if (violations == 0) best = levels[li];
    }
    cal.fallback = !best.has_value();
    cal.level = best.value_or(levels.front());
    out.push_back(std::move(cal));
  }
  return out;
}

}  // namespace mtsaug
