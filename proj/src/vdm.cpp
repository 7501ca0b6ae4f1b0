#include "daplsr/vdm.hpp"

#include <algorithm>
#include <stdexcept>

namespace daplsr {

VdmModel VdmModel::fit(const LabeledDataset& ds, int bins) {
  if (bins < 1) throw std::invalid_argument("fit_vdm: bins must be >= 1");
  if (ds.rows() < 1) throw std::invalid_argument("fit_vdm: empty dataset");

  VdmModel model;
  model.num_features_ = ds.cols();
  model.bins_ = bins;
  model.num_classes_ = ds.num_classes;
  model.edges_.resize(ds.cols());

  for (int a = 0; a < ds.cols(); ++a) {
    double lo = ds.features.col(a).minCoeff();
    double hi = ds.features.col(a).maxCoeff();
    if (bins > 1 && hi > lo) {
      std::vector<double> edges(bins - 1);
      for (int k = 0; k + 1 < bins; ++k) {
        edges[k] = lo + (hi - lo) * (k + 1) / bins;
      }
      // Ranges narrower than the bin resolution degrade to a single bin.
      bool increasing = lo < edges.front() && edges.back() < hi;
      for (std::size_t k = 0; k + 1 < edges.size() && increasing; ++k) {
        increasing = edges[k] < edges[k + 1];
      }
      if (increasing) model.edges_[a] = std::move(edges);
    }
  }

  std::vector<Matrix> counts(ds.cols(), Matrix::Zero(bins, ds.num_classes));
  for (int i = 0; i < ds.rows(); ++i) {
    for (int a = 0; a < ds.cols(); ++a) {
      counts[a](model.bin_index(a, ds.features(i, a)), ds.labels[i]) += 1.0;
    }
  }

  model.cond_prob_.assign(ds.cols(), Matrix::Zero(bins, ds.num_classes));
  model.weight_ = Matrix::Zero(ds.cols(), bins);
  for (int a = 0; a < ds.cols(); ++a) {
    for (int v = 0; v < bins; ++v) {
      double total = counts[a].row(v).sum();
      if (total <= 0.0) continue;  // unseen bin, weight stays 0
      model.cond_prob_[a].row(v) = counts[a].row(v) / total;
      model.weight_(a, v) = model.cond_prob_[a].row(v).squaredNorm();
    }
  }
  return model;
}

int VdmModel::bin_index(int feature, double value) const {
  const auto& edges = edges_[feature];
  // Number of cut points <= value; clamps out-of-range values for free.
  return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), value) - edges.begin());
}

double VdmModel::distance(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                          const Eigen::Ref<const Eigen::RowVectorXd>& y) const {
  if (x.size() != num_features_ || y.size() != num_features_) {
    throw std::invalid_argument("vdm_distance: vector length does not match model features");
  }
  double total = 0.0;
  for (int a = 0; a < num_features_; ++a) {
    int bx = bin_index(a, x[a]);
    int by = bin_index(a, y[a]);
    if (bx == by) continue;
    double wx = weight_(a, bx);
    double wy = weight_(a, by);
    if (wx <= 0.0 || wy <= 0.0) continue;  // unseen bin: feature ignored
    // plain indexed sum: matrix computation must be bit-identical to a
    // scalar per-pair evaluation of the same tables
    double delta = 0.0;
    for (int c = 0; c < num_classes_; ++c) {
      double diff = cond_prob_[a](bx, c) - cond_prob_[a](by, c);
      delta += diff * diff;
    }
    total += 0.5 * (wx + wy) * delta;
  }
  return total;
}

DistanceMatrix vdm_matrix(const VdmModel& model, const Matrix& X) {
  if (X.cols() != model.num_features()) {
    throw std::invalid_argument("vdm_matrix: column count does not match model features");
  }
  DistanceMatrix out(static_cast<int>(X.rows()));
  for (int i = 0; i < X.rows(); ++i) {
    for (int j = i + 1; j < X.rows(); ++j) {
      out.set(i, j, model.distance(X.row(i), X.row(j)));
    }
  }
  return out;
}

DistanceMatrix euclidean_matrix(const Matrix& X) {
  DistanceMatrix out(static_cast<int>(X.rows()));
  for (int i = 0; i < X.rows(); ++i) {
    for (int j = i + 1; j < X.rows(); ++j) {
      out.set(i, j, (X.row(i) - X.row(j)).norm());
    }
  }
  return out;
}

}  // namespace daplsr
