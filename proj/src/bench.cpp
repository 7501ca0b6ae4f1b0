#include "daplsr/bench.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "daplsr/metrics.hpp"
#include "daplsr/vdm.hpp"

namespace daplsr {

using json = nlohmann::json;

namespace {

NeighborMetric metric_from_string(const std::string& name) {
  if (name == "vdm") return NeighborMetric::kVdm;
  if (name == "euclidean") return NeighborMetric::kEuclidean;
  throw std::invalid_argument("config: unknown neighbor metric '" + name + "'");
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.methods.empty()) throw std::invalid_argument("config: methods list is empty");
  if (cfg.components.empty()) throw std::invalid_argument("config: component sweep is empty");
  if (cfg.repeats < 1) throw std::invalid_argument("config: repeats must be >= 1");
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction <= 1.0)) {
    throw std::invalid_argument("config: train_fraction must lie in (0, 1]");
  }
  if (cfg.dataset_format != "csv") {
    throw std::invalid_argument("config: unsupported dataset format '" + cfg.dataset_format + "'");
  }
  for (const auto& m : cfg.methods) pls_method_from_string(m);
  for (const auto& f : cfg.report_formats) report_format_from_string(f);
  if (cfg.augmentation.percent < 0) throw std::invalid_argument("config: percent must be >= 0");
  if (cfg.vdm_bins < 1) throw std::invalid_argument("config: bins must be >= 1");
}

}  // namespace

ReportFormat report_format_from_string(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw std::invalid_argument("config: unknown report format '" + name + "'");
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  json j = json::parse(in);

  ExperimentConfig cfg;
  const auto& ds = j.at("dataset");
  cfg.dataset_path = ds.at("path").get<std::string>();
  cfg.dataset_format = ds.value("format", "csv");
  cfg.dataset_has_header = ds.value("has_header", false);
  cfg.train_fraction = j.value("train_fraction", 0.75);
  if (j.contains("imbalance")) {
    for (auto& [key, value] : j.at("imbalance").items()) {
      cfg.imbalance[std::stoi(key)] = value.get<int>();
    }
  }
  if (j.contains("augmentation")) {
    const auto& aug = j.at("augmentation");
    cfg.augmentation.percent = aug.value("percent", 100.0);
    cfg.augmentation.k = aug.value("k", 5);
    cfg.vdm_bins = aug.value("bins", 10);
    cfg.augmentation.metric = metric_from_string(aug.value("metric", "vdm"));
  }
  cfg.methods = j.at("methods").get<std::vector<std::string>>();
  cfg.components = j.at("components").get<std::vector<int>>();
  cfg.repeats = j.value("repeats", 5);
  cfg.base_seed = j.value("base_seed", std::uint64_t{0});
  cfg.output_dir = j.value("output_dir", "");
  if (j.contains("report_formats")) {
    cfg.report_formats = j.at("report_formats").get<std::vector<std::string>>();
  }
  if (j.contains("daplsr_options")) {
    const auto& opt = j.at("daplsr_options");
    cfg.daplsr_options.outer_iters = opt.value("outer_iters", cfg.daplsr_options.outer_iters);
    cfg.daplsr_options.outer_tol = opt.value("outer_tol", cfg.daplsr_options.outer_tol);
    cfg.daplsr_options.random_init = opt.value("random_init", false);
    int inner = opt.value("inner_max_iters", cfg.daplsr_options.w_solver.max_iters);
    cfg.daplsr_options.w_solver.max_iters = inner;
    cfg.daplsr_options.c_solver.max_iters = inner;
    double grad_tol = opt.value("grad_tol", cfg.daplsr_options.w_solver.grad_tol);
    cfg.daplsr_options.w_solver.grad_tol = grad_tol;
    cfg.daplsr_options.c_solver.grad_tol = grad_tol;
  }
  validate(cfg);
  return cfg;
}

namespace {

CellStats aggregate(const std::vector<double>& values) {
  CellStats stats;
  if (values.empty()) return stats;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - stats.mean) * (v - stats.mean);
    stats.std_dev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return stats;
}

struct CellSamples {
  std::vector<double> error, accuracy, g_mean, precision, recall, f_measure;
};

ResultTable build_table(const ExperimentConfig& cfg,
                        const std::map<std::pair<std::string, int>, CellSamples>& samples) {
  ResultTable table;
  for (const auto& method : cfg.methods) {
    for (int c : cfg.components) {
      auto it = samples.find({method, c});
      if (it == samples.end()) continue;
      ResultTable::Row row;
      row.method = method;
      row.components = c;
      row.cell.error = aggregate(it->second.error);
      row.cell.accuracy = aggregate(it->second.accuracy);
      row.cell.g_mean = aggregate(it->second.g_mean);
      row.cell.precision = aggregate(it->second.precision);
      row.cell.recall = aggregate(it->second.recall);
      row.cell.f_measure = aggregate(it->second.f_measure);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace

ResultTable run(const ExperimentConfig& config) {
  validate(config);
  LabeledDataset full = load_csv(config.dataset_path, config.dataset_has_header);

  bool wants_daplsr = std::find(config.methods.begin(), config.methods.end(), "daplsr") !=
                      config.methods.end();

  std::map<std::pair<std::string, int>, CellSamples> samples;
  auto flush_partial = [&]() {
    if (config.output_dir.empty()) return;
    try {
      emit(build_table(config, samples), ReportFormat::kCsv,
           config.output_dir + "/partial_results.csv");
    } catch (...) {
      // best effort only
    }
  };

  for (int repeat = 0; repeat < config.repeats; ++repeat) {
    std::uint64_t seed_r = config.base_seed + static_cast<std::uint64_t>(repeat);
    auto [train, test] = stratified_split(full, config.train_fraction, seed_r);
    if (!config.imbalance.empty()) {
      train = induce_imbalance(train, config.imbalance, derive_seed(seed_r, "imbalance"));
    }

    LabeledDataset augmented_train;
    if (wants_daplsr) {
      VdmModel vdm = fit_vdm(train, config.vdm_bins);
      AugmentPlan plan = config.augmentation;
      plan.seed = derive_seed(seed_r, "smote");
      augmented_train = oversample(train, plan, vdm).dataset;
    }

    for (const auto& method : config.methods) {
      PlsMethod tag = pls_method_from_string(method);
      const LabeledDataset& data = tag == PlsMethod::kDaplsr ? augmented_train : train;
      Matrix Y = one_hot(data.labels, data.num_classes);
      for (int c : config.components) {
        try {
          PlsModel model;
          switch (tag) {
            case PlsMethod::kNipals: model = nipals_fit(data.features, Y, c); break;
            case PlsMethod::kSimpls: model = simpls_fit(data.features, Y, c); break;
            case PlsMethod::kDaplsr: {
              DaplsrOptions opt = config.daplsr_options;
              opt.components = c;
              opt.seed = derive_seed(derive_seed(seed_r, method), static_cast<std::uint64_t>(c));
              model = daplsr_fit(data.features, Y, opt);
              break;
            }
          }
          auto pred = classify(model, test.features);
          MetricsReport report = evaluate(confusion(test.labels, pred, full.num_classes));
          auto& cell = samples[{method, c}];
          cell.error.push_back(1.0 - report.accuracy);
          cell.accuracy.push_back(report.accuracy);
          cell.g_mean.push_back(report.g_mean);
          cell.precision.push_back(report.precision);
          cell.recall.push_back(report.recall);
          cell.f_measure.push_back(report.f_measure);
        } catch (const std::exception& e) {
          flush_partial();
          throw std::runtime_error("run failed at (method=" + method + ", components=" +
                                   std::to_string(c) + ", repeat=" + std::to_string(repeat) +
                                   "): " + e.what());
        }
      }
    }
  }
  return build_table(config, samples);
}

namespace {

std::string fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

void emit(const ResultTable& table, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit: cannot write '" + path + "'");
  if (format == ReportFormat::kCsv) {
    out << "method,components,error_mean,error_std,accuracy,g_mean,precision,recall,f_measure\n";
    for (const auto& row : table.rows) {
      out << row.method << ',' << row.components << ',' << fixed6(row.cell.error.mean) << ','
          << fixed6(row.cell.error.std_dev) << ',' << fixed6(row.cell.accuracy.mean) << ','
          << fixed6(row.cell.g_mean.mean) << ',' << fixed6(row.cell.precision.mean) << ','
          << fixed6(row.cell.recall.mean) << ',' << fixed6(row.cell.f_measure.mean) << '\n';
    }
  } else {
    json j = json::object();
    for (const auto& row : table.rows) {
      json cell;
      cell["error_mean"] = round6(row.cell.error.mean);
      cell["error_std"] = round6(row.cell.error.std_dev);
      cell["accuracy"] = round6(row.cell.accuracy.mean);
      cell["g_mean"] = round6(row.cell.g_mean.mean);
      cell["precision"] = round6(row.cell.precision.mean);
      cell["recall"] = round6(row.cell.recall.mean);
      cell["f_measure"] = round6(row.cell.f_measure.mean);
      j[row.method][std::to_string(row.components)] = std::move(cell);
    }
    out << j.dump(2) << '\n';
  }
  if (!out) throw std::runtime_error("emit: write failed for '" + path + "'");
}

namespace {

json stats_to_json(const CellStats& stats) {
  return json{{"mean", stats.mean}, {"std", stats.std_dev}};
}

CellStats stats_from_json(const json& j) {
  return CellStats{j.at("mean").get<double>(), j.at("std").get<double>()};
}

}  // namespace

void save_table(const ResultTable& table, const std::string& path) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"method", row.method},
                    {"components", row.components},
                    {"error", stats_to_json(row.cell.error)},
                    {"accuracy", stats_to_json(row.cell.accuracy)},
                    {"g_mean", stats_to_json(row.cell.g_mean)},
                    {"precision", stats_to_json(row.cell.precision)},
                    {"recall", stats_to_json(row.cell.recall)},
                    {"f_measure", stats_to_json(row.cell.f_measure)}});
  }
  json j;
  j["format"] = "result-table";
  j["version"] = 1;
  j["rows"] = std::move(rows);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_table: cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

ResultTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_table: cannot open '" + path + "'");
  json j = json::parse(in);
  if (j.at("format") != "result-table" || j.at("version") != 1) {
    throw std::runtime_error("load_table: unrecognized container format");
  }
  ResultTable table;
  for (const auto& row : j.at("rows")) {
    ResultTable::Row r;
    r.method = row.at("method").get<std::string>();
    r.components = row.at("components").get<int>();
    r.cell.error = stats_from_json(row.at("error"));
    r.cell.accuracy = stats_from_json(row.at("accuracy"));
    r.cell.g_mean = stats_from_json(row.at("g_mean"));
    r.cell.precision = stats_from_json(row.at("precision"));
    r.cell.recall = stats_from_json(row.at("recall"));
    r.cell.f_measure = stats_from_json(row.at("f_measure"));
    table.rows.push_back(std::move(r));
  }
  return table;
}

LabeledDataset synth_dataset(const SynthSpec& spec) {
  if (spec.per_class_counts.empty() || spec.dims < 1) {
    throw std::invalid_argument("synth_dataset: need at least one class and one dimension");
  }
  for (int count : spec.per_class_counts) {
    if (count < 1) throw std::invalid_argument("synth_dataset: class counts must be >= 1");
  }
  if (spec.cluster_spread < 0) {
    throw std::invalid_argument("synth_dataset: spread must be >= 0");
  }

  const int q = static_cast<int>(spec.per_class_counts.size());
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Matrix centers(q, spec.dims);
  for (int c = 0; c < q; ++c) {
    for (int dim = 0; dim < spec.dims; ++dim) centers(c, dim) = box(rng);
  }

  int total = 0;
  for (int count : spec.per_class_counts) total += count;
  LabeledDataset ds;
  ds.num_classes = q;
  ds.features.resize(total, spec.dims);
  ds.labels.reserve(total);
  int row = 0;
  for (int c = 0; c < q; ++c) {
    for (int i = 0; i < spec.per_class_counts[c]; ++i) {
      for (int dim = 0; dim < spec.dims; ++dim) {
        ds.features(row, dim) = centers(c, dim) + spec.cluster_spread * gauss(rng);
      }
      ds.labels.push_back(c);
      ++row;
    }
  }
  return ds;
}

}  // namespace daplsr
