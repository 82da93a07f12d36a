#include "mtsaug/ridge.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "mtsaug/error.hpp"

namespace mtsaug {
namespace {

FeatureScaler fit_scaler(const FeatureMatrix& x, bool scale_features) {
  FeatureScaler s;
  const auto n = static_cast<double>(x.rows());
  s.center = x.colwise().mean();
  s.scale = Eigen::RowVectorXd::Ones(x.cols());
  if (scale_features) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double var = (x.col(j).array() - s.center(j)).square().sum() / n;
      const double sd = std::sqrt(var);
      // Constant (or numerically constant) columns pass through unscaled.
      if (sd > 1e-12 * std::max(1.0, std::abs(s.center(j)))) s.scale(j) = sd;
    }
  }
  return s;
}

}  // namespace

Eigen::MatrixXd FeatureScaler::apply(const FeatureMatrix& x) const {
  return (x.rowwise() - center).array().rowwise() / scale.array();
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid(17);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = std::pow(10.0, -3.0 + 6.0 * static_cast<double>(i) / 16.0);
  return grid;
}

RidgeModel ridge_fit(const FeatureMatrix& features, std::span<const std::size_t> labels,
                     std::span<const double> alpha_grid, std::vector<std::string> label_names, bool scale_features) {
  const Eigen::Index n = features.rows();
  const Eigen::Index f = features.cols();
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw Error(ErrorKind::ShapeMismatch, "ridge_fit: feature rows and labels differ in count");
  }
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "ridge_fit: need at least two rows");
  if (alpha_grid.empty()) throw Error(ErrorKind::InvalidArgument, "ridge_fit: empty alpha grid");
  for (double a : alpha_grid) {
    if (!(a > 0.0)) throw Error(ErrorKind::InvalidArgument, "ridge_fit: alphas must be positive");
  }
  if (!features.allFinite()) throw Error(ErrorKind::InvalidArgument, "ridge_fit: non-finite feature value");

  std::size_t classes = label_names.size();
  for (std::size_t y : labels) classes = std::max(classes, y + 1);
  if (label_names.empty()) {
    for (std::size_t k = 0; k < classes; ++k) label_names.push_back(std::to_string(k));
  }
  if (std::all_of(labels.begin(), labels.end(), [&](std::size_t y) { return y == labels.front(); })) {
    throw Error(ErrorKind::SingleClass, "ridge_fit: training labels contain a single class");
  }

  RidgeModel model;
  model.scaler = fit_scaler(features, scale_features);
  model.label_names = std::move(label_names);
  model.alpha_grid.assign(alpha_grid.begin(), alpha_grid.end());

  const Eigen::MatrixXd x = model.scaler.apply(features);  // columns have zero mean
  const auto k = static_cast<Eigen::Index>(classes);
  Eigen::MatrixXd y = -Eigen::MatrixXd::Ones(n, k);
  for (Eigen::Index i = 0; i < n; ++i) y(i, static_cast<Eigen::Index>(labels[static_cast<std::size_t>(i)])) = 1.0;
  const Eigen::RowVectorXd intercept = y.colwise().mean();
  const Eigen::MatrixXd yc = y.rowwise() - intercept;

  // Hat diagonal: 1/n + sum_j P_ij^2 g_j, with P = U, g = l/(l+a) (dual) or
  // P = X V, g = 1/(l+a) (primal). In the dual U excludes the ones vector.
  const bool dual = n <= f;
  Eigen::MatrixXd basis;   // U (n x n-1) or X V (n x f)
  Eigen::VectorXd eig;     // eigenvalues of X X^T or X^T X
  Eigen::MatrixXd v;       // primal eigenvectors
  if (dual) {
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(x);
    gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
    // Centered columns make the all-ones vector an exact null vector of the
    // Gram matrix. A Householder reflector maps it to e_0 so the solve runs
    // on the (n-1)-dimensional complement; otherwise its rounded eigenvalue
    // (~1e-12 instead of 0) swamps 1 - h when alpha is small.
    Eigen::VectorXd hv = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    hv(0) -= 1.0;
    const double hv2 = hv.squaredNorm();
    auto reflect = [&](Eigen::MatrixXd& m) {  // m <- (I - 2 v v^T / v^T v) m
      if (hv2 > 0.0) m -= (2.0 / hv2) * hv * (hv.transpose() * m);
    };
    reflect(gram);
    gram.transposeInPlace();
    reflect(gram);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram.bottomRightCorner(n - 1, n - 1));
    basis = Eigen::MatrixXd::Zero(n, n - 1);
    basis.bottomRows(n - 1) = es.eigenvectors();
    reflect(basis);
    eig = es.eigenvalues().cwiseMax(0.0);
  } else {
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(f, f);
    cov.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.selfadjointView<Eigen::Lower>());
    v = es.eigenvectors();
    eig = es.eigenvalues().cwiseMax(0.0);
    basis = x * v;
  }
  const Eigen::MatrixXd proj = basis.transpose() * yc;  // P^T yc
  const Eigen::MatrixXd basis_sq = basis.array().square();

  std::size_t best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t a = 0; a < alpha_grid.size(); ++a) {
    const double alpha = alpha_grid[a];
    Eigen::MatrixXd residual;
    Eigen::VectorXd one_minus_hat;
    if (dual) {
      // U spans the complement of the ones vector, so residual =
      // U diag(a/(l+a)) U^T yc and 1 - h = sum_j U_ij^2 a/(l_j+a) with no
      // cancellation when the fit nearly interpolates.
      const Eigen::VectorXd r = alpha / (eig.array() + alpha);
      residual = basis * (r.asDiagonal() * proj);
      one_minus_hat = basis_sq * r;
    } else {
      // fitted = XV diag(1/(l+a)) (XV)^T yc
      const Eigen::VectorXd g = (eig.array() + alpha).inverse();
      residual = yc - basis * (g.asDiagonal() * proj);
      one_minus_hat = 1.0 - ((basis_sq * g).array() + inv_n);
    }
    double err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      err += (residual.row(i) / std::max(one_minus_hat(i), 1e-12)).squaredNorm();
    }
    err /= static_cast<double>(n * k);
    model.loocv_errors.push_back(err);
    if (err < best_err) {
      best_err = err;
      best = a;
    }
  }

  model.alpha = alpha_grid[best];
  const double alpha = model.alpha;
  Eigen::MatrixXd w;
  if (dual) {
    // X^T (X X^T + a I)^{-1} yc
    const Eigen::VectorXd inv = (eig.array() + alpha).inverse();
    w = x.transpose() * (basis * (inv.asDiagonal() * proj));
  } else {
    const Eigen::VectorXd inv = (eig.array() + alpha).inverse();
    w = v * (inv.asDiagonal() * proj);
  }
  model.weights.resize(f + 1, k);
  model.weights.topRows(f) = w;
  model.weights.row(f) = intercept;
  if (!model.weights.allFinite()) throw Error(ErrorKind::InvalidArgument, "ridge_fit: non-finite weights");
  return model;
}

Eigen::MatrixXd ridge_scores(const RidgeModel& model, const FeatureMatrix& features) {
  if (static_cast<std::size_t>(features.cols()) != model.feature_count()) {
    throw Error(ErrorKind::WidthMismatch, "ridge_predict: expected " + std::to_string(model.feature_count()) +
                                              " features, got " + std::to_string(features.cols()));
  }
  const Eigen::Index f = features.cols();
  Eigen::MatrixXd scores = model.scaler.apply(features) * model.weights.topRows(f);
  scores.rowwise() += model.weights.row(f);
  return scores;
}

std::vector<std::size_t> ridge_predict(const RidgeModel& model, const FeatureMatrix& features) {
  const Eigen::MatrixXd scores = ridge_scores(model, features);
  std::vector<std::size_t> out(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index arg = 0;
    for (Eigen::Index j = 1; j < scores.cols(); ++j) {
      if (scores(i, j) > scores(i, arg)) arg = j;
    }
    out[static_cast<std::size_t>(i)] = static_cast<std::size_t>(arg);
  }
  return out;
}

double accuracy(std::span<const std::size_t> predicted, std::span<const std::size_t> truth) {
  if (predicted.size() != truth.size()) throw Error(ErrorKind::ShapeMismatch, "accuracy: lengths differ");
  if (truth.empty()) throw Error(ErrorKind::EmptyDataset, "accuracy: nothing to score");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace mtsaug
