#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "mtsaug/augment.hpp"
#include "mtsaug/error.hpp"

namespace mtsaug {
namespace {

void log_draw(DrawLog* log, const char* name, double value) {
  if (log) log->emplace_back(name, value);
}

std::size_t window_length(double ratio, std::size_t length) {
  const auto w = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(length)));
  return std::clamp<std::size_t>(w, 0, length);
}

void require_unit_ratio(double ratio, const char* what, bool allow_zero) {
  const bool ok = allow_zero ? (ratio >= 0.0 && ratio <= 1.0) : (ratio > 0.0 && ratio <= 1.0);
  if (!ok) throw Error(ErrorKind::RatioOutOfRange, std::string(what) + " ratio out of range");
}

}  // namespace

std::vector<double> resample_linear(std::span<const double> x, std::size_t out_length) {
  std::vector<double> out(out_length);
  if (out_length == 0) return out;
  if (x.size() == 1 || out_length == 1) {
    std::fill(out.begin(), out.end(), x.front());
    return out;
  }
  const double step = static_cast<double>(x.size() - 1) / static_cast<double>(out_length - 1);
  for (std::size_t i = 0; i < out_length; ++i) {
    const double pos = static_cast<double>(i) * step;
    const auto lo = std::min(static_cast<std::size_t>(pos), x.size() - 2);
    const double frac = pos - static_cast<double>(lo);
    out[i] = x[lo] + frac * (x[lo + 1] - x[lo]);
  }
  out.back() = x.back();
  return out;
}

Series inject_noise(const Series& s, double level, RngStream& rng, DrawLog* log) {
  require_fully_observed(s, "inject_noise");
  if (!(level >= 0.0)) throw Error(ErrorKind::InvalidArgument, "noise level must be non-negative");
  const auto stds = per_channel_std(s);
  std::vector<double> out(s.values().begin(), s.values().end());
  for (std::size_t m = 0; m < s.channels(); ++m) {
    const double sigma = level * stds[m];
    for (std::size_t t = 0; t < s.length(); ++t) out[m * s.length() + t] += sigma * rng.normal();
  }
  log_draw(log, "level", level);
  return Series(s.channels(), s.length(), std::move(out), {}, s.id());
}

Series scale(const Series& s, double low, double high, RngStream& rng, DrawLog* log) {
  require_fully_observed(s, "scale");
  if (!(low <= high)) throw Error(ErrorKind::InvalidArgument, "scale: low > high");
  const double factor = low == high ? low : rng.uniform(low, high);
  std::vector<double> out(s.values().begin(), s.values().end());
  for (double& v : out) v *= factor;
  log_draw(log, "factor", factor);
  return Series(s.channels(), s.length(), std::move(out), {}, s.id());
}

Series rotate(const Series& s, RngStream& rng, DrawLog* log) {
  require_fully_observed(s, "rotate");
  const std::size_t m = s.channels();
  const std::size_t t = s.length();
  if (m == 1) {
    std::vector<double> out(s.values().begin(), s.values().end());
    for (double& v : out) v = -v;
    log_draw(log, "sign", -1.0);
    return Series(1, t, std::move(out), {}, s.id());
  }

  // Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
  // signs of R's diagonal folded into Q.
  Eigen::MatrixXd g(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }

  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(
      s.values().data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(t));
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> y = q * x;
  for (Eigen::Index i = 0; i < q.size(); ++i) log_draw(log, "q", q.data()[i]);
  return Series(m, t, std::vector<double>(y.data(), y.data() + y.size()), {}, s.id());
}

Series slice_resize(const Series& s, double ratio, RngStream& rng, DrawLog* log) {
  require_fully_observed(s, "slice_resize");
  require_unit_ratio(ratio, "slice", false);
  const std::size_t t = s.length();
  const std::size_t w = std::max<std::size_t>(1, window_length(ratio, t));
  const std::size_t start = rng.below(t - w + 1);
  std::vector<double> out;
  out.reserve(s.size());
  for (std::size_t m = 0; m < s.channels(); ++m) {
    const auto part = resample_linear(s.channel(m).subspan(start, w), t);
    out.insert(out.end(), part.begin(), part.end());
  }
  log_draw(log, "start", static_cast<double>(start));
  log_draw(log, "width", static_cast<double>(w));
  return Series(s.channels(), t, std::move(out), {}, s.id());
}

Series permute_segments(const Series& s, std::size_t n_segments, RngStream& rng, DrawLog* log) {
  require_fully_observed(s, "permute_segments");
  const std::size_t t = s.length();
  if (n_segments < 1 || n_segments > t) {
    throw Error(ErrorKind::InvalidArgument, "permute_segments: need 1 <= segments <= length");
  }
  // Near-equal blocks: the first (t % n) blocks are one step longer.
  std::vector<std::size_t> begin(n_segments + 1, 0);
  for (std::size_t k = 0; k < n_segments; ++k) {
    begin[k + 1] = begin[k] + t / n_segments + (k < t % n_segments ? 1 : 0);
  }
  std::vector<std::size_t> order(n_segments);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n_segments; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<double> out;
  out.reserve(s.size());
  for (std::size_t m = 0; m < s.channels(); ++m) {
    const auto ch = s.channel(m);
    for (std::size_t k : order) out.insert(out.end(), ch.begin() + begin[k], ch.begin() + begin[k + 1]);
  }
  for (std::size_t k : order) log_draw(log, "segment", static_cast<double>(k));
  return Series(s.channels(), t, std::move(out), {}, s.id());
}

Series time_mask(const Series& s, double ratio, RngStream& rng, MaskFill fill, DrawLog* log) {
  require_fully_observed(s, "time_mask");
  require_unit_ratio(ratio, "time-mask", true);
  const std::size_t t = s.length();
  const std::size_t w = window_length(ratio, t);
  const std::size_t start = rng.below(t - w + 1);
  std::vector<double> out(s.values().begin(), s.values().end());
  for (std::size_t m = 0; m < s.channels(); ++m) {
    const auto ch = s.channel(m);
    const double value =
        fill == MaskFill::Zero ? 0.0 : std::accumulate(ch.begin(), ch.end(), 0.0) / static_cast<double>(t);
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(m * t + start), w, value);
  }
  log_draw(log, "start", static_cast<double>(start));
  log_draw(log, "width", static_cast<double>(w));
  return Series(s.channels(), t, std::move(out), {}, s.id());
}

Series window_warp(const Series& s, double window_ratio, std::span<const double> scales, RngStream& rng,
                   DrawLog* log) {
  require_fully_observed(s, "window_warp");
  require_unit_ratio(window_ratio, "window-warp", false);
  if (scales.empty()) throw Error(ErrorKind::InvalidArgument, "window_warp: empty scale set");
  const std::size_t t = s.length();
  const std::size_t w = std::max<std::size_t>(1, window_length(window_ratio, t));
  const std::size_t start = rng.below(t - w + 1);
  const double factor = scales[rng.below(scales.size())];
  if (!(factor > 0.0)) throw Error(ErrorKind::InvalidArgument, "window_warp: scales must be positive");
  const auto warped_len =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(w) * factor)));

  std::vector<double> out;
  out.reserve(s.size());
  std::vector<double> stretched;
  for (std::size_t m = 0; m < s.channels(); ++m) {
    const auto ch = s.channel(m);
    stretched.assign(ch.begin(), ch.begin() + static_cast<std::ptrdiff_t>(start));
    const auto mid = resample_linear(ch.subspan(start, w), warped_len);
    stretched.insert(stretched.end(), mid.begin(), mid.end());
    stretched.insert(stretched.end(), ch.begin() + static_cast<std::ptrdiff_t>(start + w), ch.end());
    const auto back = resample_linear(stretched, t);
    out.insert(out.end(), back.begin(), back.end());
  }
  log_draw(log, "start", static_cast<double>(start));
  log_draw(log, "width", static_cast<double>(w));
  log_draw(log, "scale", factor);
  return Series(s.channels(), t, std::move(out), {}, s.id());
}

}  // namespace mtsaug
