#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace daplsr {

/// Entry (i, j) counts samples of true class i predicted as class j.
struct ConfusionMatrix {
  int num_classes = 0;
  std::vector<std::int64_t> counts;  // row-major q x q

  std::int64_t& at(int true_cls, int pred_cls) {
    return counts[static_cast<std::size_t>(true_cls) * num_classes + pred_cls];
  }
  std::int64_t at(int true_cls, int pred_cls) const {
    return counts[static_cast<std::size_t>(true_cls) * num_classes + pred_cls];
  }
  std::int64_t total() const;
};

struct ClassScores {
  double sensitivity;
  double specificity;
  double precision;
  double recall;
  double f_measure;
};

/// Accuracy plus macro one-vs-rest aggregates; the geometric mean combines
/// the macro sensitivity and specificity. Ratios with a zero denominator
/// are reported as 0.
struct MetricsReport {
  double accuracy = 0.0;
  double g_mean = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::vector<ClassScores> per_class;
};

enum class Averaging { kMacro, kMicro };

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          int num_classes);

MetricsReport evaluate(const ConfusionMatrix& cm, Averaging averaging = Averaging::kMacro);

/// Fixed-key JSON text: accuracy, g_mean, precision, recall, f_measure,
/// per_class.
std::string report_to_json(const MetricsReport& report);

}  // namespace daplsr
