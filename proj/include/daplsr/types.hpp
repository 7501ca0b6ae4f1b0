#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>

namespace daplsr {

// Row-major storage throughout: rows are samples, columns are features or
// class indicators, and serialized buffers are row-major without copies.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Column means removed from the feature and label blocks before fitting.
struct CenteringStats {
  Vector feature_means;
  Vector label_means;
};

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

// splitmix64; used to derive independent seed streams so that adding or
// removing one consumer never shifts another consumer's stream.
inline std::uint64_t mix_seed(std::uint64_t state) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(base ^ mix_seed(stream));
}

// FNV-1a, for labeling streams by name ("smote", method tags, ...).
inline std::uint64_t hash_name(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::string_view name) {
  return derive_seed(base, hash_name(name));
}

}  // namespace daplsr
