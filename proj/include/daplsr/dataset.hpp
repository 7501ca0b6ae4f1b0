#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "daplsr/types.hpp"

namespace daplsr {

/// Feature matrix paired with dense integer class labels in [0, num_classes).
struct LabeledDataset {
  Matrix features;          // n x d
  std::vector<int> labels;  // length n
  int num_classes = 0;

  int rows() const { return static_cast<int>(features.rows()); }
  int cols() const { return static_cast<int>(features.cols()); }

  /// Per-class sample counts, indexed by class id.
  std::vector<int> class_counts() const;
};

/// Parses a comma-separated file whose last column is a nonnegative integer
/// class label. Reports malformed input with 1-based row/column locations.
LabeledDataset load_csv(const std::string& path, bool has_header);

/// Writes a dataset in the same layout load_csv expects. Reals are printed
/// with enough digits to round-trip.
void save_csv(const LabeledDataset& ds, const std::string& path);

/// Subtracts per-column means. Returns the centered matrix and the means.
std::pair<Matrix, Vector> mean_center(const Matrix& m);

/// n x q indicator matrix with row i set to 1 at column labels[i].
Matrix one_hot(const std::vector<int>& labels, int num_classes);

/// Seeded per-class split: floor(fraction * count) samples (at least 1) per
/// class go to train, the rest to test. Row order within each part follows
/// the original dataset.
std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& ds,
                                                           double train_fraction,
                                                           std::uint64_t seed);

/// Seeded subsample with exactly the requested count per listed class;
/// unlisted classes keep all samples. Kept rows stay in original order.
LabeledDataset induce_imbalance(const LabeledDataset& ds,
                                const std::map<int, int>& per_class_counts,
                                std::uint64_t seed);

}  // namespace daplsr
