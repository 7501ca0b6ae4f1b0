#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "daplsr/solver.hpp"
#include "daplsr/types.hpp"

namespace daplsr {

enum class PlsMethod { kNipals, kSimpls, kDaplsr };

const char* to_string(PlsMethod method);
PlsMethod pls_method_from_string(const std::string& name);

/// Fitted projection model. W and C project the centered feature and label
/// blocks, T = X_centered W are the scores, and P, Q the loadings, so that
/// predictions are X_centered W Q' plus the label means.
struct PlsModel {
  PlsMethod method = PlsMethod::kNipals;
  int num_components = 0;  // actually extracted (may be below the request)
  Matrix W;                // d x c
  Matrix C;                // q x c
  Matrix T;                // n x c, equal to X_centered * W by construction
  Matrix P;                // d x c
  Matrix Q;                // q x c
  CenteringStats centering;
  std::map<std::string, double> solver_info;  // method-specific fit metadata
};

/// Alternating-solver settings: outer alternation budget and tolerance plus
/// the per-block conjugate-gradient parameters.
struct DaplsrOptions {
  int components = 1;
  int outer_iters = 30;
  double outer_tol = 1e-8;  // relative objective change
  SolverParams w_solver;
  SolverParams c_solver;
  std::uint64_t seed = 0;
  bool random_init = false;  // default warm-starts from the SIMPLS solution
};

/// Fit record kept for analysis: every inner solve trace in execution order
/// (alternating W and C blocks) and the objective after each outer round.
struct DaplsrDiagnostics {
  std::vector<SolveTrace> inner_traces;
  std::vector<double> outer_objectives;
  double final_objective = 0.0;
  int outer_rounds = 0;
  double ridge = 0.0;
};

/// Sequential extraction with deflation; the weight of each component is the
/// dominant eigenvector of X'YY'X found by power iteration.
PlsModel nipals_fit(const Matrix& X, const Matrix& Y, int components);

/// Sequential extraction maximizing w'Sc over unit vectors, with the
/// cross-product matrix S deflated against the orthonormalized loadings.
PlsModel simpls_fit(const Matrix& X, const Matrix& Y, int components);

/// Joint extraction of all components by alternating conjugate-gradient
/// ascent of tr(W'X'YC) over the generalized Stiefel manifold (W, metric
/// X'X + ridge) and the oblique manifold (C).
PlsModel daplsr_fit(const Matrix& X, const Matrix& Y, const DaplsrOptions& options,
                    DaplsrDiagnostics* diagnostics = nullptr);

/// X W Q' on the centered input, shifted back by the label means.
Matrix predict(const PlsModel& model, const Matrix& X_test);

/// Label-side scores U = Y_centered C. Not used by prediction; provided for
/// model inspection.
Matrix y_scores(const PlsModel& model, const Matrix& Y);

/// Argmax over predicted label columns; ties go to the lowest class id.
std::vector<int> classify(const PlsModel& model, const Matrix& X_test);

/// JSON container with dimensions, row-major matrices, centering stats and
/// fit metadata. Values round-trip bit-exactly.
void save_model(const PlsModel& model, const std::string& path);
PlsModel load_model(const std::string& path);

}  // namespace daplsr
