#include "daplsr/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace daplsr {

std::vector<int> LabeledDataset::class_counts() const {
  std::vector<int> counts(num_classes, 0);
  for (int lab : labels) counts.at(lab)++;
  return counts;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view cell, int row, int col) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    throw std::runtime_error("csv: non-numeric cell at row " + std::to_string(row) +
                             ", column " + std::to_string(col));
  }
  return value;
}

int parse_label(std::string_view cell, int row, int col) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    // A negative integer parses fine; anything else does not.
    throw std::runtime_error("csv: label is not an integer at row " + std::to_string(row) +
                             ", column " + std::to_string(col));
  }
  if (value < 0) {
    throw std::runtime_error("csv: negative label at row " + std::to_string(row) +
                             ", column " + std::to_string(col));
  }
  return value;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

}  // namespace

LabeledDataset load_csv(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  std::size_t width = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && has_header) continue;
    if (trim(line).empty()) continue;
    auto cells = split_cells(line);
    if (cells.size() < 2) {
      throw std::runtime_error("csv: row " + std::to_string(line_no) +
                               " has fewer than 2 columns");
    }
    if (width == 0) {
      width = cells.size();
    } else if (cells.size() != width) {
      throw std::runtime_error("csv: ragged row " + std::to_string(line_no) + " (expected " +
                               std::to_string(width) + " columns, got " +
                               std::to_string(cells.size()) + ")");
    }
    std::vector<double> feats(width - 1);
    for (std::size_t j = 0; j + 1 < width; ++j) {
      feats[j] = parse_real(cells[j], line_no, static_cast<int>(j) + 1);
    }
    labels.push_back(parse_label(cells[width - 1], line_no, static_cast<int>(width)));
    rows.push_back(std::move(feats));
  }
  if (rows.empty()) throw std::runtime_error("csv: no data rows in '" + path + "'");

  LabeledDataset ds;
  ds.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 1));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j + 1 < width; ++j) ds.features(i, j) = rows[i][j];
  }
  ds.labels = std::move(labels);
  ds.num_classes = 1 + *std::max_element(ds.labels.begin(), ds.labels.end());
  return ds;
}

void save_csv(const LabeledDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot write '" + path + "'");
  char buf[64];
  for (int i = 0; i < ds.rows(); ++i) {
    for (int j = 0; j < ds.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", ds.features(i, j));
      out << buf << ',';
    }
    out << ds.labels[i] << '\n';
  }
  if (!out) throw std::runtime_error("csv: write failed for '" + path + "'");
}

std::pair<Matrix, Vector> mean_center(const Matrix& m) {
  if (m.rows() < 1) throw std::invalid_argument("mean_center: matrix has zero rows");
  Vector means = m.colwise().mean();
  Matrix centered = m.rowwise() - means.transpose();
  return {std::move(centered), std::move(means)};
}

Matrix one_hot(const std::vector<int>& labels, int num_classes) {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw std::invalid_argument("one_hot: label " + std::to_string(labels[i]) +
                                  " out of range [0, " + std::to_string(num_classes) + ")");
    }
    out(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  }
  return out;
}

namespace {

LabeledDataset take_rows(const LabeledDataset& ds, const std::vector<int>& rows) {
  LabeledDataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), ds.features.cols());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = ds.features.row(rows[i]);
    out.labels.push_back(ds.labels[rows[i]]);
  }
  out.num_classes = ds.num_classes;
  return out;
}

std::vector<std::vector<int>> rows_by_class(const LabeledDataset& ds) {
  std::vector<std::vector<int>> by_class(ds.num_classes);
  for (int i = 0; i < ds.rows(); ++i) by_class[ds.labels[i]].push_back(i);
  return by_class;
}

}  // namespace

std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& ds,
                                                           double train_fraction,
                                                           std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    throw std::invalid_argument("stratified_split: train_fraction must lie in (0, 1]");
  }
  auto by_class = rows_by_class(ds);
  for (int c = 0; c < ds.num_classes; ++c) {
    if (by_class[c].empty()) {
      throw std::invalid_argument("stratified_split: class " + std::to_string(c) +
                                  " has no samples");
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<int> train_rows, test_rows;
  for (int c = 0; c < ds.num_classes; ++c) {
    auto& rows = by_class[c];
    // The epsilon absorbs representation error in fraction * count so the
    // result matches exact rational arithmetic.
    int take = static_cast<int>(std::floor(train_fraction * rows.size() + 1e-9));
    take = std::max(1, std::min<int>(take, static_cast<int>(rows.size())));
    std::shuffle(rows.begin(), rows.end(), rng);
    train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + take);
    test_rows.insert(test_rows.end(), rows.begin() + take, rows.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {take_rows(ds, train_rows), take_rows(ds, test_rows)};
}

LabeledDataset induce_imbalance(const LabeledDataset& ds,
                                const std::map<int, int>& per_class_counts,
                                std::uint64_t seed) {
  for (const auto& [cls, count] : per_class_counts) {
    if (cls < 0 || cls >= ds.num_classes) {
      throw std::invalid_argument("induce_imbalance: unknown class " + std::to_string(cls));
    }
    (void)count;
  }
  auto by_class = rows_by_class(ds);
  std::mt19937_64 rng(seed);
  std::vector<int> kept;
  for (int c = 0; c < ds.num_classes; ++c) {
    auto& rows = by_class[c];
    auto it = per_class_counts.find(c);
    if (it == per_class_counts.end()) {
      kept.insert(kept.end(), rows.begin(), rows.end());
      continue;
    }
    if (it->second < 0 || it->second > static_cast<int>(rows.size())) {
      throw std::invalid_argument("induce_imbalance: requested " + std::to_string(it->second) +
                                  " samples of class " + std::to_string(c) + " but only " +
                                  std::to_string(rows.size()) + " available");
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    kept.insert(kept.end(), rows.begin(), rows.begin() + it->second);
  }
  std::sort(kept.begin(), kept.end());
  return take_rows(ds, kept);
}

}  // namespace daplsr
