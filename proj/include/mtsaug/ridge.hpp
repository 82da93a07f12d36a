#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mtsaug/rocket.hpp"

namespace mtsaug {

/// Column centering and scaling applied before the ridge solve.
struct FeatureScaler {
  Eigen::RowVectorXd center;
  Eigen::RowVectorXd scale;  // population std, or 1 where the column is constant

  Eigen::MatrixXd apply(const FeatureMatrix& x) const;
};

/// One-vs-rest ridge classifier over +/-1 targets.
struct RidgeModel {
  Eigen::MatrixXd weights;  // (features + 1) x classes; last row is the intercept
  double alpha = 0.0;
  FeatureScaler scaler;
  std::vector<std::string> label_names;
  std::vector<double> alpha_grid;
  std::vector<double> loocv_errors;  // mean squared leave-one-out residual per grid alpha

  std::size_t feature_count() const noexcept { return static_cast<std::size_t>(weights.rows()) - 1; }
  std::size_t class_count() const noexcept { return static_cast<std::size_t>(weights.cols()); }
};

/// 17 log-spaced values from 1e-3 to 1e3.
std::vector<double> default_alpha_grid();

/// Fits ridge for every alpha in the grid on a shared eigendecomposition and
/// keeps the alpha with the smallest closed-form leave-one-out error (first
/// one on ties). The intercept is not penalized. With `scale_features` off,
/// columns are only centered.
RidgeModel ridge_fit(const FeatureMatrix& features, std::span<const std::size_t> labels,
                     std::span<const double> alpha_grid, std::vector<std::string> label_names = {},
                     bool scale_features = true);

Eigen::MatrixXd ridge_scores(const RidgeModel& model, const FeatureMatrix& features);

/// argmax over class scores; ties go to the lowest class index.
std::vector<std::size_t> ridge_predict(const RidgeModel& model, const FeatureMatrix& features);

/// Percentage of matching entries, in [0, 100].
double accuracy(std::span<const std::size_t> predicted, std::span<const std::size_t> truth);

}  // namespace mtsaug
