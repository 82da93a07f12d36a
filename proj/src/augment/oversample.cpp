#include <algorithm>
#include <cmath>
#include <numeric>

#include "mtsaug/augment.hpp"
#include "mtsaug/error.hpp"
#include "mtsaug/kernels.hpp"

namespace mtsaug {
namespace {

struct ClassBlock {
  std::vector<std::size_t> members;  // dataset indices
  std::vector<double> rows;          // flattened members, row-major
  std::size_t channels = 0;
  std::size_t length = 0;

  std::size_t dim() const noexcept { return channels * length; }
  kernels::RowBlock block() const noexcept { return {rows, members.size(), dim()}; }
};

ClassBlock gather_class(const LabeledDataset& ds, std::size_t class_idx, const char* context) {
  if (class_idx >= ds.num_labels()) throw Error(ErrorKind::InvalidArgument, std::string(context) + ": bad class index");
  ClassBlock c;
  c.members = ds.members_of(class_idx);
  if (c.members.empty()) {
    throw Error(ErrorKind::EmptyClass, std::string(context) + ": class '" + ds.labels()[class_idx] + "' is empty");
  }
  const Series& first = ds[c.members.front()].series;
  c.channels = first.channels();
  c.length = first.length();
  c.rows.reserve(c.members.size() * c.dim());
  for (std::size_t i : c.members) {
    const Series& s = ds[i].series;
    if (s.length() != c.length) throw Error(ErrorKind::ShapeMismatch, std::string(context) + ": series lengths differ");
    const auto flat = flatten(s);
    c.rows.insert(c.rows.end(), flat.begin(), flat.end());
  }
  return c;
}

std::string synthetic_id(const LabeledDataset& ds, std::size_t class_idx, const char* technique, std::size_t j) {
  return std::string(technique) + "/" + ds.labels()[class_idx] + "/" + std::to_string(j);
}

}  // namespace

std::size_t smote_neighbor_count(std::size_t class_size) noexcept {
  return class_size == 0 ? 0 : std::min<std::size_t>(5, class_size - 1);
}

std::vector<SyntheticItem> smote_synthesize(const LabeledDataset& ds, std::size_t class_idx, std::size_t count,
                                            RngStream& rng) {
  const ClassBlock c = gather_class(ds, class_idx, "smote");
  const std::size_t n = c.members.size();
  const std::size_t k = smote_neighbor_count(n);
  const std::size_t d = c.dim();

  // k nearest same-class neighbours of every member; ties by member order.
  std::vector<std::vector<std::size_t>> neighbours(n);
  if (k > 0) {
    const auto dist = kernels::pairwise_sq_distances(c.block(), c.block());
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      order.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) order.push_back(j);
      }
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return dist[i * n + a] < dist[i * n + b]; });
      neighbours[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    }
  }

  std::vector<SyntheticItem> out;
  out.reserve(count);
  std::vector<double> v(d);
  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t p = rng.below(n);
    const Series& parent = ds[c.members[p]].series;
    SynthesisRecord rec;
    rec.synthetic_id = synthetic_id(ds, class_idx, "smote", j);
    rec.technique = "smote";
    rec.parent_ids.push_back(parent.id());
    if (k == 0) {
      rec.parameters.emplace_back("lambda", 0.0);
      out.push_back({parent.with_id(rec.synthetic_id), std::move(rec)});
      continue;
    }
    const std::size_t q = neighbours[p][rng.below(k)];
    const double lambda = rng.uniform();
    const auto x = c.block().row(p);
    const auto y = c.block().row(q);
    for (std::size_t i = 0; i < d; ++i) v[i] = x[i] + lambda * (y[i] - x[i]);
    rec.parent_ids.push_back(ds[c.members[q]].series.id());
    rec.parameters.emplace_back("lambda", lambda);
    rec.parameters.emplace_back("k", static_cast<double>(k));
    out.push_back({reshape(v, c.channels, c.length, rec.synthetic_id), std::move(rec)});
  }
  return out;
}

std::vector<SyntheticItem> gaussian_cov_synthesize(const LabeledDataset& ds, std::size_t class_idx, std::size_t count,
                                                   double shrinkage, RngStream& rng) {
  if (!(shrinkage >= 0.0 && shrinkage <= 1.0)) throw Error(ErrorKind::RatioOutOfRange, "shrinkage must lie in [0, 1]");
  const ClassBlock c = gather_class(ds, class_idx, "gaussian_cov");
  const std::size_t n = c.members.size();
  const std::size_t d = c.dim();

  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = c.block().row(i);
    for (std::size_t j = 0; j < d; ++j) mean[j] += r[j];
  }
  for (double& x : mean) x /= static_cast<double>(n);

  // S = B B^T with B = centered^T / sqrt(n), so sampling B z (z ~ N(0, I_n))
  // has covariance S without ever forming the d x d matrix. The shrinkage
  // target adds an independent diagonal term.
  std::vector<double> centered(n * d);
  std::vector<double> diag(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = c.block().row(i);
    for (std::size_t j = 0; j < d; ++j) {
      centered[i * d + j] = r[j] - mean[j];
      diag[j] += centered[i * d + j] * centered[i * d + j];
    }
  }
  for (double& x : diag) x /= static_cast<double>(n);
  const double low_rank_scale = std::sqrt((1.0 - shrinkage) / static_cast<double>(n));
  std::vector<double> diag_scale(d);
  for (std::size_t j = 0; j < d; ++j) diag_scale[j] = std::sqrt(shrinkage * diag[j]);

  std::vector<std::string> parents;
  parents.reserve(n);
  for (std::size_t i : c.members) parents.push_back(ds[i].series.id());

  std::vector<SyntheticItem> out;
  out.reserve(count);
  std::vector<double> v(d);
  std::vector<double> z(n);
  for (std::size_t j = 0; j < count; ++j) {
    for (double& x : z) x = rng.normal();
    v = mean;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = low_rank_scale * z[i];
      for (std::size_t q = 0; q < d; ++q) v[q] += w * centered[i * d + q];
    }
    for (std::size_t q = 0; q < d; ++q) v[q] += diag_scale[q] * rng.normal();

    SynthesisRecord rec;
    rec.synthetic_id = synthetic_id(ds, class_idx, "gaussian-cov", j);
    rec.technique = "gaussian-cov";
    rec.parent_ids = parents;
    rec.parameters.emplace_back("shrinkage", shrinkage);
    out.push_back({reshape(v, c.channels, c.length, rec.synthetic_id), std::move(rec)});
  }
  return out;
}

}  // namespace mtsaug
