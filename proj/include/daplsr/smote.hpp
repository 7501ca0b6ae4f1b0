#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daplsr/dataset.hpp"
#include "daplsr/vdm.hpp"

namespace daplsr {

enum class NeighborMetric { kVdm, kEuclidean };

/// Oversampling plan: percent = 200 means two synthetic samples per minority
/// base sample; a fractional remainder becomes one extra synthetic per base
/// with the matching probability.
struct AugmentPlan {
  int k = 5;
  double percent = 100.0;
  std::uint64_t seed = 0;
  NeighborMetric metric = NeighborMetric::kVdm;
};

/// Provenance of one synthetic row: x = base + zeta * (neighbor - base).
struct SynthRecord {
  int base;
  int neighbor;
  double zeta;
};

struct Augmented {
  LabeledDataset dataset;       // originals first, synthetics appended
  std::vector<SynthRecord> log; // one entry per synthetic row, in order
};

/// The k same-class rows nearest to `base` (excluding it), ties broken by
/// lower index.
std::vector<int> k_nearest(const DistanceMatrix& D, int base, int k,
                           const std::vector<bool>& same_class);

/// Point on the closed segment from base to neighbor at parameter zeta.
Eigen::RowVectorXd synthesize(const Eigen::Ref<const Eigen::RowVectorXd>& base,
                              const Eigen::Ref<const Eigen::RowVectorXd>& neighbor, double zeta);

/// Grows every class whose count is below the maximum class count by
/// interpolating toward metric-nearest same-class neighbors. Original rows
/// are preserved in order; synthetic rows carry their base sample's label.
/// Per-class random streams are derived from plan.seed and the class id.
Augmented oversample(const LabeledDataset& ds, const AugmentPlan& plan, const VdmModel& vdm);

/// Audit log as CSV: base_idx,neighbor_idx,zeta.
void save_provenance_csv(const std::vector<SynthRecord>& log, const std::string& path);

}  // namespace daplsr
