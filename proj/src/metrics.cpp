#include "daplsr/metrics.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace daplsr {

std::int64_t ConfusionMatrix::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                          int num_classes) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("confusion: label vectors have different lengths");
  }
  ConfusionMatrix cm;
  cm.num_classes = num_classes;
  cm.counts.assign(static_cast<std::size_t>(num_classes) * num_classes, 0);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] < 0 || y_true[i] >= num_classes || y_pred[i] < 0 || y_pred[i] >= num_classes) {
      throw std::invalid_argument("confusion: class id out of range at position " +
                                  std::to_string(i));
    }
    cm.at(y_true[i], y_pred[i])++;
  }
  return cm;
}

namespace {

double ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

}  // namespace

MetricsReport evaluate(const ConfusionMatrix& cm, Averaging averaging) {
  const std::int64_t total = cm.total();
  if (cm.num_classes < 1 || total < 1) throw std::invalid_argument("evaluate: empty confusion matrix");

  MetricsReport report;
  std::int64_t diag = 0;
  for (int k = 0; k < cm.num_classes; ++k) diag += cm.at(k, k);
  report.accuracy = static_cast<double>(diag) / static_cast<double>(total);

  double tp_total = 0, fp_total = 0, fn_total = 0, tn_total = 0;
  double sens_sum = 0, spec_sum = 0, prec_sum = 0, rec_sum = 0, f_sum = 0;
  for (int k = 0; k < cm.num_classes; ++k) {
    std::int64_t tp = cm.at(k, k);
    std::int64_t fn = 0, fp = 0;
    for (int j = 0; j < cm.num_classes; ++j) {
      if (j != k) {
        fn += cm.at(k, j);
        fp += cm.at(j, k);
      }
    }
    std::int64_t tn = total - tp - fn - fp;

    ClassScores scores;
    scores.sensitivity = ratio(static_cast<double>(tp), static_cast<double>(tp + fn));
    scores.specificity = ratio(static_cast<double>(tn), static_cast<double>(fp + tn));
    scores.precision = ratio(static_cast<double>(tp), static_cast<double>(tp + fp));
    scores.recall = scores.sensitivity;
    double pr = scores.precision + scores.recall;
    scores.f_measure = pr > 0 ? 2.0 * scores.precision * scores.recall / pr : 0.0;
    report.per_class.push_back(scores);

    sens_sum += scores.sensitivity;
    spec_sum += scores.specificity;
    prec_sum += scores.precision;
    rec_sum += scores.recall;
    f_sum += scores.f_measure;
    tp_total += static_cast<double>(tp);
    fp_total += static_cast<double>(fp);
    fn_total += static_cast<double>(fn);
    tn_total += static_cast<double>(tn);
  }

  const double q = cm.num_classes;
  if (averaging == Averaging::kMacro) {
    report.precision = prec_sum / q;
    report.recall = rec_sum / q;
    report.f_measure = f_sum / q;
    report.g_mean = std::sqrt((sens_sum / q) * (spec_sum / q));
  } else {
    report.precision = ratio(tp_total, tp_total + fp_total);
    report.recall = ratio(tp_total, tp_total + fn_total);
    double pr = report.precision + report.recall;
    report.f_measure = pr > 0 ? 2.0 * report.precision * report.recall / pr : 0.0;
    double micro_spec = ratio(tn_total, fp_total + tn_total);
    report.g_mean = std::sqrt(report.recall * micro_spec);
  }
  return report;
}

std::string report_to_json(const MetricsReport& report) {
  nlohmann::json j;
  j["accuracy"] = report.accuracy;
  j["g_mean"] = report.g_mean;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f_measure"] = report.f_measure;
  j["per_class"] = nlohmann::json::array();
  for (const auto& scores : report.per_class) {
    j["per_class"].push_back({{"sensitivity", scores.sensitivity},
                              {"specificity", scores.specificity},
                              {"precision", scores.precision},
                              {"recall", scores.recall},
                              {"f", scores.f_measure}});
  }
  return j.dump(2);
}

}  // namespace daplsr
