#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "mtsaug/augment.hpp"
#include "mtsaug/error.hpp"

namespace mtsaug {
namespace {

// FFTW's planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        time_(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        freq_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {
    const std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n);
    forward_ = fftw_plan_dft_r2c_1d(len, time_.get(), freq_.get(), FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_1d(len, freq_.get(), time_.get(), FFTW_ESTIMATE);
  }
  ~RealFft() {
    const std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* time() noexcept { return time_.get(); }
  fftw_complex* freq() noexcept { return freq_.get(); }
  void forward() noexcept { fftw_execute(forward_); }
  // Unnormalized: the caller divides by n.
  void inverse() noexcept { fftw_execute(inverse_); }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::unique_ptr<double, FftwFree> time_;
  std::unique_ptr<fftw_complex, FftwFree> freq_;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

}  // namespace

Series freq_mask(const Series& s, double ratio, RngStream& rng, DrawLog* log) {
  require_fully_observed(s, "freq_mask");
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw Error(ErrorKind::RatioOutOfRange, "freq-mask ratio out of range");
  const std::size_t t = s.length();
  const std::size_t positive_bins = t / 2;  // bins 1 .. t/2
  const auto requested = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(t) / 2.0));
  const std::size_t band = std::min(requested, positive_bins);
  const std::size_t first = band == 0 ? 1 : 1 + rng.below(positive_bins - band + 1);
  if (log) {
    log->emplace_back("first_bin", static_cast<double>(first));
    log->emplace_back("bins", static_cast<double>(band));
  }
  if (band == 0) return s;

  RealFft fft(t);
  std::vector<double> out(s.size());
  const double inv_n = 1.0 / static_cast<double>(t);
  for (std::size_t m = 0; m < s.channels(); ++m) {
    const auto ch = s.channel(m);
    std::copy(ch.begin(), ch.end(), fft.time());
    fft.forward();
    // The half-spectrum stores each positive bin once; its conjugate mirror
    // is implied, so zeroing it here removes both.
    for (std::size_t k = first; k < first + band; ++k) {
      fft.freq()[k][0] = 0.0;
      fft.freq()[k][1] = 0.0;
    }
    fft.inverse();
    for (std::size_t i = 0; i < t; ++i) out[m * t + i] = fft.time()[i] * inv_n;
  }
  return Series(s.channels(), t, std::move(out), {}, s.id());
}

}  // namespace mtsaug
