#include <cmath>

#include "doctest.h"
#include "mtsaug/error.hpp"
#include "mtsaug/rng.hpp"
#include "mtsaug/ridge.hpp"
#include "support/oracles.hpp"

using namespace mtsaug;

namespace {

// The model keeps weights for centered (and scaled) features; map them back
// to raw-feature coefficients with an ordinary intercept.
Eigen::VectorXd raw_coefficients(const RidgeModel& m, Eigen::Index c) {
  const Eigen::Index f = static_cast<Eigen::Index>(m.feature_count());
  Eigen::VectorXd out(f + 1);
  out.head(f) = m.weights.col(c).head(f).array() / m.scaler.scale.transpose().array();
  out(f) = m.weights(f, c) - m.scaler.center.dot(out.head(f));
  return out;
}

FeatureMatrix random_matrix(Eigen::Index n, Eigen::Index f, RngStream& rng) {
  FeatureMatrix x(n, f);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < f; ++j) x(i, j) = rng.normal() * (1.0 + j);
  }
  return x;
}

Eigen::MatrixXd targets(const std::vector<std::size_t>& labels, std::size_t k) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(k), -1.0);
  for (std::size_t i = 0; i < labels.size(); ++i) y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(labels[i])) = 1.0;
  return y;
}

}  // namespace

TEST_CASE("default alpha grid") {
  const auto g = default_alpha_grid();
  REQUIRE(g.size() == 17);
  CHECK(g.front() == doctest::Approx(1e-3));
  CHECK(g.back() == doctest::Approx(1e3));
  CHECK(g[8] == doctest::Approx(1.0));
}

TEST_CASE("ridge weights match the normal equations") {
  RngStream rng(1, "ridge");
  for (int rep = 0; rep < 50; ++rep) {
    // Both the primal (N > F) and dual (N <= F) paths.
    const Eigen::Index n = rep % 2 ? 20 : 6, f = rep % 2 ? 5 : 12;
    const FeatureMatrix x = random_matrix(n, f, rng);
    std::vector<std::size_t> labels(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i < 3 ? i : rng.below(3);
    const double alpha = std::exp(rng.uniform(-3, 3));
    const double grid[] = {alpha};
    const RidgeModel m = ridge_fit(x, labels, grid, {}, false);
    const Eigen::MatrixXd y = targets(labels, 3);
    for (Eigen::Index c = 0; c < 3; ++c) {
      const Eigen::VectorXd expect = oracle::ridge_normal_equations(x, y.col(c), alpha);
      const double err = (raw_coefficients(m, c) - expect).norm() / expect.norm();
      CHECK(err < 1e-8);
    }
  }
}

TEST_CASE("LOOCV matches refitting and selects the grid minimum") {
  RngStream rng(2, "loocv");
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::Index n = rep % 2 ? 14 : 8, f = rep % 2 ? 4 : 10;
    const FeatureMatrix x = random_matrix(n, f, rng);
    std::vector<std::size_t> labels(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 2;
    const auto grid = default_alpha_grid();
    const RidgeModel m = ridge_fit(x, labels, grid, {}, false);
    REQUIRE(m.loocv_errors.size() == grid.size());
    const Eigen::MatrixXd y = targets(labels, 2);
    std::size_t argmin = 0;
    for (std::size_t a = 0; a < grid.size(); ++a) {
      const double brute = oracle::loocv_by_refit(x, y, grid[a]);
      CAPTURE(grid[a]);
      CHECK(std::fabs(m.loocv_errors[a] - brute) / brute < 1e-8);
      if (m.loocv_errors[a] < m.loocv_errors[argmin]) argmin = a;
    }
    CHECK(m.alpha == grid[argmin]);
  }
}

TEST_CASE("interpolation, duplication, prediction") {
  // X = I, alpha -> 0: training labels reproduced.
  FeatureMatrix x = FeatureMatrix::Identity(4, 4);
  const std::vector<std::size_t> labels{0, 1, 2, 3};
  const double tiny[] = {1e-10};
  const RidgeModel m = ridge_fit(x, labels, tiny);
  const auto pred = ridge_predict(m, x);
  CHECK(pred == labels);
  CHECK(accuracy(pred, labels) == 100.0);
  CHECK(accuracy(std::vector<std::size_t>{1, 0}, std::vector<std::size_t>{0, 1}) == 0.0);

  // Duplicating rows at matched alpha (2 alpha) leaves scores unchanged.
  RngStream rng(3, "dup");
  const FeatureMatrix a = random_matrix(10, 4, rng);
  std::vector<std::size_t> la(10);
  for (std::size_t i = 0; i < 10; ++i) la[i] = i % 3;
  FeatureMatrix a2(20, 4);
  a2 << a, a;
  std::vector<std::size_t> la2(la);
  la2.insert(la2.end(), la.begin(), la.end());
  const double g1[] = {0.7}, g2[] = {1.4};
  const RidgeModel m1 = ridge_fit(a, la, g1), m2 = ridge_fit(a2, la2, g2);
  CHECK((ridge_scores(m1, a) - ridge_scores(m2, a)).cwiseAbs().maxCoeff() < 1e-8);

  // Constant columns are passed through unscaled, never fatal.
  FeatureMatrix c = a;
  c.col(2).setConstant(3.0);
  const RidgeModel mc = ridge_fit(c, la, default_alpha_grid());
  CHECK(mc.scaler.scale(2) == 1.0);
  CHECK(mc.weights.allFinite());

  // Argmax is invariant to positive rescaling; ties go to the lowest index.
  RidgeModel scaled = m1;
  scaled.weights *= 3.5;
  CHECK(ridge_predict(scaled, a) == ridge_predict(m1, a));
  RidgeModel flat = m1;
  flat.weights.setZero();
  for (auto p : ridge_predict(flat, a)) CHECK(p == 0);
}

TEST_CASE("ridge errors") {
  const FeatureMatrix x = FeatureMatrix::Ones(3, 2);
  try {
    ridge_fit(x, std::vector<std::size_t>{1, 1, 1}, default_alpha_grid());
    FAIL("expected SingleClass");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingleClass);
  }
  const RidgeModel m = ridge_fit(FeatureMatrix::Identity(2, 2), std::vector<std::size_t>{0, 1}, default_alpha_grid());
  try {
    ridge_scores(m, FeatureMatrix::Ones(1, 3));
    FAIL("expected WidthMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WidthMismatch);
  }
}
