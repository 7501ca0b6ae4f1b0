#include "daplsr/manifold.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace daplsr {

namespace {

Matrix symm(const Matrix& a) { return 0.5 * (a + a.transpose()); }

Matrix gaussian_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  }
  return m;
}

}  // namespace

GeneralizedStiefel::GeneralizedStiefel(Matrix B, int cols) : b_(std::move(B)), cols_(cols) {
  if (b_.rows() != b_.cols()) throw std::invalid_argument("generalized Stiefel: B must be square");
  if (cols_ < 1 || cols_ > b_.rows()) {
    throw std::invalid_argument("generalized Stiefel: need 1 <= cols <= rows");
  }
  if ((b_ - Matrix(b_.transpose())).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("generalized Stiefel: B is not symmetric");
  }
  b_ = symm(b_);
  llt_.compute(b_);
  if (llt_.info() != Eigen::Success) {
    throw std::invalid_argument("generalized Stiefel: B is not positive definite");
  }
}

GeneralizedStiefel GeneralizedStiefel::from_data(const Matrix& X, int cols) {
  Matrix B = X.transpose() * X;
  B += data_ridge(X) * Matrix::Identity(B.rows(), B.cols());
  return GeneralizedStiefel(std::move(B), cols);
}

namespace {

void check_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols, const char* where) {
  if (m.rows() != rows || m.cols() != cols) {
    throw std::invalid_argument(std::string(where) + ": expected " + std::to_string(rows) + "x" +
                                std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
}

}  // namespace

Matrix GeneralizedStiefel::project(const Matrix& W, const Matrix& Z) const {
  check_shape(W, rows(), cols_, "gs project point");
  check_shape(Z, rows(), cols_, "gs project argument");
  return Z - W * symm(W.transpose() * (b_ * Z));
}

Matrix GeneralizedStiefel::rgrad(const Matrix& W, const Matrix& euclid_grad) const {
  check_shape(W, rows(), cols_, "gs gradient point");
  check_shape(euclid_grad, rows(), cols_, "gs gradient argument");
  Matrix scaled = llt_.solve(euclid_grad);
  return scaled - W * symm(W.transpose() * euclid_grad);
}

Matrix GeneralizedStiefel::orthonormalize(const Matrix& M) const {
  Matrix Q = M;
  Matrix BQ(M.rows(), M.cols());  // cached B q_i columns
  for (int j = 0; j < Q.cols(); ++j) {
    double initial = std::sqrt(std::max(0.0, Q.col(j).dot(b_ * Q.col(j))));
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        Q.col(j) -= BQ.col(i).dot(Q.col(j)) * Q.col(i);
      }
    }
    Eigen::VectorXd bq = b_ * Q.col(j);
    double nrm = std::sqrt(std::max(0.0, Q.col(j).dot(bq)));
    if (!(nrm > 1e-14 * (1.0 + initial))) {
      throw std::runtime_error("generalized Stiefel retraction: columns collapse (B-rank deficient)");
    }
    Q.col(j) /= nrm;
    BQ.col(j) = bq / nrm;
  }
  return Q;
}

Matrix GeneralizedStiefel::retract(const Matrix& W, const Matrix& xi) const {
  check_shape(xi, W.rows(), W.cols(), "gs retract argument");
  if (xi.isZero(0.0)) return W;  // R_W(0) = W exactly
  return orthonormalize(W + xi);
}

double GeneralizedStiefel::norm(const Matrix& at, const Matrix& a) const {
  return std::sqrt(std::max(0.0, inner(at, a, a)));
}

Matrix GeneralizedStiefel::random_point(std::uint64_t seed) const {
  std::uint64_t s = seed;
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return orthonormalize(gaussian_matrix(rows(), cols_, s));
    } catch (const std::runtime_error&) {
      s = derive_seed(seed, static_cast<std::uint64_t>(attempt + 1));
    }
  }
  throw std::runtime_error("generalized Stiefel: random point degenerate after 8 attempts");
}

double GeneralizedStiefel::feasibility_error(const Matrix& W) const {
  return (W.transpose() * b_ * W - Matrix::Identity(cols_, cols_)).norm();
}

double GeneralizedStiefel::tangency_error(const Matrix& W, const Matrix& xi) const {
  return symm(W.transpose() * (b_ * xi)).norm();
}

Oblique::Oblique(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("oblique: need rows, cols >= 1");
}

Matrix Oblique::project(const Matrix& C, const Matrix& Z) const {
  check_shape(C, rows_, cols_, "oblique project point");
  check_shape(Z, rows_, cols_, "oblique project argument");
  Matrix out = Z;
  for (int j = 0; j < C.cols(); ++j) {
    out.col(j) -= C.col(j).dot(Z.col(j)) * C.col(j);
  }
  return out;
}

Matrix Oblique::retract(const Matrix& C, const Matrix& xi) const {
  check_shape(xi, C.rows(), C.cols(), "oblique retract argument");
  if (xi.isZero(0.0)) return C;
  Matrix out = C + xi;
  for (int j = 0; j < out.cols(); ++j) {
    double nrm = out.col(j).norm();
    if (nrm < 1e-14) {
      throw std::runtime_error("oblique retraction: column " + std::to_string(j) +
                               " has near-zero norm");
    }
    out.col(j) /= nrm;
  }
  return out;
}

Matrix Oblique::random_point(std::uint64_t seed) const {
  std::uint64_t s = seed;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Matrix m = gaussian_matrix(rows_, cols_, s);
    bool ok = true;
    for (int j = 0; j < cols_; ++j) {
      double nrm = m.col(j).norm();
      if (nrm < 1e-14) {
        ok = false;
        break;
      }
      m.col(j) /= nrm;
    }
    if (ok) return m;
    s = derive_seed(seed, static_cast<std::uint64_t>(attempt + 1));
  }
  throw std::runtime_error("oblique: random point degenerate after 8 attempts");
}

double Oblique::feasibility_error(const Matrix& C) const {
  double worst = 0.0;
  for (int j = 0; j < C.cols(); ++j) {
    worst = std::max(worst, std::abs(C.col(j).norm() - 1.0));
  }
  return worst;
}

double Oblique::tangency_error(const Matrix& C, const Matrix& xi) const {
  double worst = 0.0;
  for (int j = 0; j < C.cols(); ++j) {
    worst = std::max(worst, std::abs(C.col(j).dot(xi.col(j))));
  }
  return worst;
}

}  // namespace daplsr
