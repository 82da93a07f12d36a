#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mtsaug::kernels {

/// Row-major block of `rows` vectors, each `cols` long.
struct RowBlock {
  std::span<const double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::span<const double> row(std::size_t i) const noexcept { return data.subspan(i * cols, cols); }
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// out[i * b.rows + j] = |a_i - b_j|^2. The OpenMP version splits over
/// rows of `a`; each entry is computed by the same loop as the serial
/// reference, so the two agree bit for bit.
std::vector<double> pairwise_sq_distances(const RowBlock& a, const RowBlock& b);
std::vector<double> pairwise_sq_distances_serial(const RowBlock& a, const RowBlock& b);

/// Index of the nearest row of `b` for every row of `a` (ties: lowest index).
std::vector<std::size_t> nearest_rows(const RowBlock& a, const RowBlock& b);

int max_threads() noexcept;

}  // namespace mtsaug::kernels
