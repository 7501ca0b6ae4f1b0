#pragma once

#include <vector>

#include "daplsr/dataset.hpp"
#include "daplsr/types.hpp"

namespace daplsr {

/// Symmetric pairwise distances with zero diagonal, stored as the strict
/// upper triangle.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(int n) : n_(n), tri_(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0) {}

  int size() const { return n_; }

  double operator()(int i, int j) const {
    if (i == j) return 0.0;
    return tri_[offset(i, j)];
  }

  void set(int i, int j, double value) {
    if (i == j) return;  // diagonal pinned at zero
    tri_[offset(i, j)] = value;
  }

 private:
  std::size_t offset(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  int n_;
  std::vector<double> tri_;
};

/// Class-conditional probability tables over equal-width discretized feature
/// values. A feature's distance weight is the sum of squared conditional
/// probabilities of its bin; bins never seen in training carry weight 0 and
/// are ignored at query time.
class VdmModel {
 public:
  /// Equal-width binning over each feature's training range. Constant
  /// features collapse to a single bin.
  static VdmModel fit(const LabeledDataset& ds, int bins);

  int num_features() const { return num_features_; }
  int bins_per_feature() const { return bins_; }
  int num_classes() const { return num_classes_; }

  /// Interior cut points for one feature (bins-1 ascending values, empty for
  /// a constant feature).
  const std::vector<double>& bin_edges(int feature) const { return edges_[feature]; }

  /// Bin index for a raw value; out-of-range values clamp to the boundary
  /// bins.
  int bin_index(int feature, double value) const;

  double cond_prob(int feature, int bin, int cls) const {
    return cond_prob_[feature](bin, cls);
  }
  double weight(int feature, int bin) const { return weight_(feature, bin); }

  /// Distance between two feature vectors: per feature, the squared
  /// difference of class-conditional probability vectors times the mean of
  /// the two bins' weights. The printed per-value weight would make the
  /// metric direction-dependent; averaging keeps it symmetric while
  /// preserving the [0, 2w] per-feature bound.
  double distance(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                  const Eigen::Ref<const Eigen::RowVectorXd>& y) const;

 private:
  int num_features_ = 0;
  int bins_ = 0;
  int num_classes_ = 0;
  std::vector<std::vector<double>> edges_;  // per feature, ascending
  std::vector<Matrix> cond_prob_;           // per feature: bins x classes
  Matrix weight_;                           // features x bins
};

inline VdmModel fit_vdm(const LabeledDataset& ds, int bins) { return VdmModel::fit(ds, bins); }

inline double vdm_distance(const VdmModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                           const Eigen::Ref<const Eigen::RowVectorXd>& y) {
  return model.distance(x, y);
}

/// All pairwise model distances over the rows of X.
DistanceMatrix vdm_matrix(const VdmModel& model, const Matrix& X);

/// Plain pairwise Euclidean distances (alternative neighbor metric).
DistanceMatrix euclidean_matrix(const Matrix& X);

}  // namespace daplsr
