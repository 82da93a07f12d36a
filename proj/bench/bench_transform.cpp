// Times the OpenMP kernels against their serial references and checks that
// both produce identical output.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "mtsaug/kernels.hpp"
#include "mtsaug/rng.hpp"
#include "mtsaug/rocket.hpp"

using namespace mtsaug;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

std::vector<LabeledItem> random_items(std::size_t n, std::size_t m, std::size_t t, RngStream& rng) {
  std::vector<LabeledItem> items;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(m * t);
    for (auto& x : v) x = rng.normal();
    items.push_back({Series(m, t, std::move(v)), i % 2});
  }
  return items;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 100;
  const std::size_t kernels = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 2000;
  const std::size_t m = 6, t = 100;
  const int reps = 3;

  RngStream rng(42, "bench");
  const auto items = random_items(n, m, t, rng);
  RngStream bank_rng = rng.child("bank");
  const KernelBank bank = generate_kernels(kernels, t, m, bank_rng);

  std::printf("threads: %d\n", kernels::max_threads());
  std::printf("transform  n=%zu kernels=%zu M=%zu T=%zu\n", n, kernels, m, t);
  FeatureMatrix a, b;
  const double ts = seconds([&] { a = transform_serial(items, bank); }, reps);
  const double tp = seconds([&] { b = transform(items, bank); }, reps);
  std::printf("  serial   %9.4f s\n  openmp   %9.4f s  (x%.2f)  identical=%s\n", ts, tp, ts / tp,
              a == b ? "yes" : "NO");

  const std::size_t rows = 2000, cols = m * t;
  std::vector<double> data(rows * cols);
  for (auto& x : data) x = rng.normal();
  const kernels::RowBlock block{data, rows, cols};
  std::vector<double> ds, dp;
  std::printf("pairwise   rows=%zu cols=%zu\n", rows, cols);
  const double ps = seconds([&] { ds = kernels::pairwise_sq_distances_serial(block, block); }, reps);
  const double pp = seconds([&] { dp = kernels::pairwise_sq_distances(block, block); }, reps);
  std::printf("  serial   %9.4f s\n  openmp   %9.4f s  (x%.2f)  identical=%s\n", ps, pp, ps / pp,
              ds == dp ? "yes" : "NO");
  return a == b && ds == dp ? 0 : 1;
}
