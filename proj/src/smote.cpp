#include "daplsr/smote.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

namespace daplsr {

std::vector<int> k_nearest(const DistanceMatrix& D, int base, int k,
                           const std::vector<bool>& same_class) {
  std::vector<std::pair<double, int>> candidates;
  for (int i = 0; i < D.size(); ++i) {
    if (i == base || !same_class[i]) continue;
    candidates.emplace_back(D(base, i), i);
  }
  if (static_cast<int>(candidates.size()) < k) {
    throw std::invalid_argument("k_nearest: only " + std::to_string(candidates.size()) +
                                " same-class candidates for k=" + std::to_string(k));
  }
  std::sort(candidates.begin(), candidates.end());  // (distance, index)
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) out[i] = candidates[i].second;
  return out;
}

Eigen::RowVectorXd synthesize(const Eigen::Ref<const Eigen::RowVectorXd>& base,
                              const Eigen::Ref<const Eigen::RowVectorXd>& neighbor, double zeta) {
  if (base.size() != neighbor.size()) {
    throw std::invalid_argument("synthesize: vector lengths differ");
  }
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    throw std::invalid_argument("synthesize: zeta outside [0, 1]");
  }
  return base + zeta * (neighbor - base);
}

Augmented oversample(const LabeledDataset& ds, const AugmentPlan& plan, const VdmModel& vdm) {
  if (plan.percent < 0.0) throw std::invalid_argument("oversample: percent must be >= 0");
  if (plan.k < 1) throw std::invalid_argument("oversample: k must be >= 1");

  auto counts = ds.class_counts();
  int max_count = *std::max_element(counts.begin(), counts.end());
  for (int c = 0; c < ds.num_classes; ++c) {
    if (counts[c] < max_count && counts[c] <= plan.k) {
      throw std::invalid_argument("oversample: minority class " + std::to_string(c) + " has " +
                                  std::to_string(counts[c]) + " samples, need more than k=" +
                                  std::to_string(plan.k));
    }
  }

  int full_passes = static_cast<int>(std::floor(plan.percent / 100.0));
  double fractional = plan.percent / 100.0 - full_passes;

  Augmented out;
  out.dataset.num_classes = ds.num_classes;
  if (plan.percent == 0.0) {
    out.dataset = ds;
    return out;
  }

  DistanceMatrix D = plan.metric == NeighborMetric::kVdm ? vdm_matrix(vdm, ds.features)
                                                         : euclidean_matrix(ds.features);

  std::vector<Eigen::RowVectorXd> synth_rows;
  std::vector<int> synth_labels;
  for (int c = 0; c < ds.num_classes; ++c) {
    if (counts[c] >= max_count) continue;
    std::vector<bool> mask(ds.rows());
    for (int i = 0; i < ds.rows(); ++i) mask[i] = ds.labels[i] == c;

    std::mt19937_64 rng(derive_seed(plan.seed, static_cast<std::uint64_t>(c)));
    std::uniform_int_distribution<int> pick(0, plan.k - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int base = 0; base < ds.rows(); ++base) {
      if (!mask[base]) continue;
      int copies = full_passes;
      if (fractional > 0.0 && unit(rng) < fractional) ++copies;
      if (copies == 0) continue;
      auto neighbors = k_nearest(D, base, plan.k, mask);
      for (int s = 0; s < copies; ++s) {
        int neighbor = neighbors[pick(rng)];
        double zeta = unit(rng);
        while (zeta == 0.0) zeta = unit(rng);  // open interval
        synth_rows.push_back(synthesize(ds.features.row(base), ds.features.row(neighbor), zeta));
        synth_labels.push_back(c);
        out.log.push_back({base, neighbor, zeta});
      }
    }
  }

  out.dataset.features.resize(ds.rows() + static_cast<Eigen::Index>(synth_rows.size()), ds.cols());
  out.dataset.features.topRows(ds.rows()) = ds.features;
  for (std::size_t i = 0; i < synth_rows.size(); ++i) {
    out.dataset.features.row(ds.rows() + static_cast<Eigen::Index>(i)) = synth_rows[i];
  }
  out.dataset.labels = ds.labels;
  out.dataset.labels.insert(out.dataset.labels.end(), synth_labels.begin(), synth_labels.end());
  return out;
}

void save_provenance_csv(const std::vector<SynthRecord>& log, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("provenance: cannot write '" + path + "'");
  f << "base_idx,neighbor_idx,zeta\n";
  char buf[64];
  for (const auto& rec : log) {
    std::snprintf(buf, sizeof(buf), "%.17g", rec.zeta);
    f << rec.base << ',' << rec.neighbor << ',' << buf << '\n';
  }
}

}  // namespace daplsr
