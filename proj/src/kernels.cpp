#include "mtsaug/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mtsaug::kernels {

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double ss = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    ss += d * d;
  }
  return ss;
}

std::vector<double> pairwise_sq_distances_serial(const RowBlock& a, const RowBlock& b) {
  std::vector<double> out(a.rows * b.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.rows; ++j) out[i * b.rows + j] = squared_distance(a.row(i), b.row(j));
  }
  return out;
}

std::vector<double> pairwise_sq_distances(const RowBlock& a, const RowBlock& b) {
  std::vector<double> out(a.rows * b.rows);
  const auto n = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < b.rows; ++j) out[ui * b.rows + j] = squared_distance(a.row(ui), b.row(j));
  }
  return out;
}

std::vector<std::size_t> nearest_rows(const RowBlock& a, const RowBlock& b) {
  std::vector<std::size_t> out(a.rows, 0);
  const auto n = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    double best = squared_distance(a.row(ui), b.row(0));
    std::size_t arg = 0;
    for (std::size_t j = 1; j < b.rows; ++j) {
      const double d = squared_distance(a.row(ui), b.row(j));
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    out[ui] = arg;
  }
  return out;
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace mtsaug::kernels
