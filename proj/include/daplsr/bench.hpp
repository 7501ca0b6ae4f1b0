#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "daplsr/dataset.hpp"
#include "daplsr/pls.hpp"
#include "daplsr/smote.hpp"

namespace daplsr {

/// Batch experiment description. All randomness flows from base_seed;
/// repeat r uses base_seed + r and derives one independent stream per
/// consumer (split, imbalance, oversampling, per-method fits).
struct ExperimentConfig {
  std::string dataset_path;
  std::string dataset_format = "csv";
  bool dataset_has_header = false;
  double train_fraction = 0.75;
  std::map<int, int> imbalance;  // empty: leave training counts as split
  AugmentPlan augmentation;      // seed field is derived per repeat
  int vdm_bins = 10;
  std::vector<std::string> methods;
  std::vector<int> components;
  int repeats = 5;
  std::uint64_t base_seed = 0;
  std::string output_dir;
  std::vector<std::string> report_formats = {"csv"};
  DaplsrOptions daplsr_options;  // components and seed overridden per cell
};

struct CellStats {
  double mean = 0.0;
  double std_dev = 0.0;
};

/// Aggregates over repeats for one (method, components) cell.
struct ResultCell {
  CellStats error;
  CellStats accuracy;
  CellStats g_mean;
  CellStats precision;
  CellStats recall;
  CellStats f_measure;
};

struct ResultTable {
  struct Row {
    std::string method;
    int components;
    ResultCell cell;
  };
  std::vector<Row> rows;  // config order: methods outer, components inner
};

/// Parses the JSON experiment file (snake_case keys, see README).
ExperimentConfig parse_config(const std::string& path);

/// Runs the full protocol: per repeat, split, optionally induce imbalance,
/// oversample the training set (consumed by the daplsr method; the baseline
/// methods fit the unaugmented training set), fit every (method, c) cell,
/// classify the test set and aggregate the metric means and standard
/// deviations. On error, partial aggregates are flushed to
/// output_dir/partial_results.csv before the error is rethrown with
/// (method, components, repeat) context.
ResultTable run(const ExperimentConfig& config);

enum class ReportFormat { kCsv, kJson };

ReportFormat report_format_from_string(const std::string& name);

/// CSV: header method,components,error_mean,error_std,accuracy,g_mean,
/// precision,recall,f_measure with 6-decimal reals. JSON: the same data
/// nested by method then component count.
void emit(const ResultTable& table, ReportFormat format, const std::string& path);

/// Full-fidelity table container used by the `report` subcommand.
void save_table(const ResultTable& table, const std::string& path);
ResultTable load_table(const std::string& path);

struct SynthSpec {
  std::vector<int> per_class_counts;
  int dims = 2;
  double cluster_spread = 0.1;
  std::uint64_t seed = 0;
};

/// Seeded Gaussian blobs: one center per class drawn uniformly in [-1, 1]^d,
/// isotropic noise with the given spread.
LabeledDataset synth_dataset(const SynthSpec& spec);

}  // namespace daplsr
