#pragma once

#include <cstdint>

#include "daplsr/types.hpp"

namespace daplsr {

/// Matrices W with W' B W = I for a fixed symmetric positive definite B.
/// The metric is the B-induced one, <a, b> = tr(a' B b). Under it the
/// Riemannian gradient is the tangent projection of B^{-1} egrad; projecting
/// egrad itself would not reproduce directional derivatives unless B = I.
class GeneralizedStiefel {
 public:
  /// Validates symmetry (within 1e-10 entrywise) and positive definiteness.
  GeneralizedStiefel(Matrix B, int cols);

  /// B = X' X + ridge, with ridge = 1e-8 tr(X' X) / d so the constraint
  /// stays well posed when X has fewer rows than columns.
  static GeneralizedStiefel from_data(const Matrix& X, int cols);

  /// The regularization from_data adds to the diagonal of X' X.
  static double data_ridge(const Matrix& X) {
    return 1e-8 * X.squaredNorm() / static_cast<double>(X.cols());
  }

  int rows() const { return static_cast<int>(b_.rows()); }
  int cols() const { return cols_; }
  const Matrix& metric_matrix() const { return b_; }

  /// Tangent projection at W: Z - W symm(W' B Z).
  Matrix project(const Matrix& W, const Matrix& Z) const;

  /// B-metric gradient: project(W, B^{-1} euclid_grad) = B^{-1} g - W symm(W' g).
  Matrix rgrad(const Matrix& W, const Matrix& euclid_grad) const;

  /// Gram-Schmidt in the B inner product applied to W + xi (two passes).
  /// Throws when the columns collapse to B-rank deficiency.
  Matrix retract(const Matrix& W, const Matrix& xi) const;

  /// Projection transport: re-project xi onto the tangent space at `to`.
  Matrix transport(const Matrix& from, const Matrix& to, const Matrix& xi) const {
    (void)from;
    return project(to, xi);
  }

  double inner(const Matrix& at, const Matrix& a, const Matrix& b) const {
    (void)at;
    if (a.rows() != b_.rows() || a.rows() != b.rows() || a.cols() != b.cols()) {
      throw std::invalid_argument("gs inner: shape mismatch");
    }
    return (a.transpose() * b_ * b).trace();
  }

  double norm(const Matrix& at, const Matrix& a) const;

  /// Seeded Gaussian matrix, B-orthonormalized. Retries with derived seeds
  /// (at most 8) on a degenerate draw.
  Matrix random_point(std::uint64_t seed) const;

  /// B-orthonormalization of an arbitrary full-rank matrix.
  Matrix orthonormalize(const Matrix& M) const;

  double feasibility_error(const Matrix& W) const;           // ||W'BW - I||_F
  double tangency_error(const Matrix& W, const Matrix& xi) const;  // ||symm(W'B xi)||_F

  static constexpr double feasibility_tolerance() { return 1e-8; }

 private:
  Matrix b_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  int cols_;
};

/// Matrices whose columns each have unit Euclidean norm: diag(C'C) = I.
class Oblique {
 public:
  Oblique(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// Tangent projection at C: Z - C diag(C'Z).
  Matrix project(const Matrix& C, const Matrix& Z) const;

  Matrix rgrad(const Matrix& C, const Matrix& euclid_grad) const { return project(C, euclid_grad); }

  /// Column-wise renormalization of C + xi. Throws when a column degenerates.
  Matrix retract(const Matrix& C, const Matrix& xi) const;

  Matrix transport(const Matrix& from, const Matrix& to, const Matrix& xi) const {
    (void)from;
    return project(to, xi);
  }

  double inner(const Matrix& at, const Matrix& a, const Matrix& b) const {
    (void)at;
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
      throw std::invalid_argument("oblique inner: shape mismatch");
    }
    return (a.array() * b.array()).sum();
  }

  double norm(const Matrix& at, const Matrix& a) const {
    (void)at;
    return a.norm();
  }

  Matrix random_point(std::uint64_t seed) const;

  double feasibility_error(const Matrix& C) const;  // max_j | ||c_j|| - 1 |
  double tangency_error(const Matrix& C, const Matrix& xi) const;  // max_j |c_j' xi_j|

  static constexpr double feasibility_tolerance() { return 1e-12; }

 private:
  int rows_;
  int cols_;
};

}  // namespace daplsr
