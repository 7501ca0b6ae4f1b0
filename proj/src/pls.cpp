#include "daplsr/pls.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "daplsr/dataset.hpp"
#include "daplsr/manifold.hpp"

namespace daplsr {

using json = nlohmann::json;

const char* to_string(PlsMethod method) {
  switch (method) {
    case PlsMethod::kNipals: return "nipals";
    case PlsMethod::kSimpls: return "simpls";
    case PlsMethod::kDaplsr: return "daplsr";
  }
  return "unknown";
}

PlsMethod pls_method_from_string(const std::string& name) {
  if (name == "nipals") return PlsMethod::kNipals;
  if (name == "simpls") return PlsMethod::kSimpls;
  if (name == "daplsr") return PlsMethod::kDaplsr;
  throw std::invalid_argument("unknown PLS method '" + name + "'");
}

namespace {

constexpr double kPowerTol = 1e-12;
constexpr int kPowerIters = 10000;

// Deterministic, generic start vector (a constant vector risks being an
// exact eigenvector of structured test matrices).
Vector power_start(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i);
  return v / v.norm();
}

void fix_sign(Vector& v) {
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  if (v[at] < 0) v = -v;
}

// Dominant eigenvector of the PSD operator v -> X'(Y(Y'(X v))). Returns a
// zero vector when the operator vanishes.
Vector dominant_weight(const Matrix& X, const Matrix& Y) {
  Vector v = power_start(X.cols());
  double scale = (X.transpose() * (Y * (Y.transpose() * (X * v)))).norm();
  if (!(scale > 0)) return Vector::Zero(X.cols());
  for (int it = 0; it < kPowerIters; ++it) {
    Vector next = X.transpose() * (Y * (Y.transpose() * (X * v)));
    double nrm = next.norm();
    if (!(nrm > 0)) return Vector::Zero(X.cols());
    next /= nrm;
    if ((next - v).norm() <= kPowerTol) {
      v = next;
      break;
    }
    v = next;
  }
  fix_sign(v);
  return v;
}

// Dominant eigenvector of a small explicit PSD matrix.
Vector dominant_eigvec(const Matrix& M) {
  Vector v = power_start(M.rows());
  for (int it = 0; it < kPowerIters; ++it) {
    Vector next = M * v;
    double nrm = next.norm();
    if (!(nrm > 0)) return Vector::Zero(M.rows());
    next /= nrm;
    if ((next - v).norm() <= kPowerTol) {
      v = next;
      break;
    }
    v = next;
  }
  fix_sign(v);
  return v;
}

Matrix take_columns(const std::vector<Vector>& cols, Eigen::Index rows) {
  Matrix out(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = cols[j];
  return out;
}

void finalize_loadings(PlsModel& model, const Matrix& Xc, const Matrix& Yc) {
  model.T = Xc * model.W;
  if (model.num_components == 0) {
    model.P = Matrix::Zero(Xc.cols(), 0);
    model.Q = Matrix::Zero(Yc.cols(), 0);
    return;
  }
  Matrix gram = model.T.transpose() * model.T;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (lu.rank() < model.num_components) {
    throw std::runtime_error(std::string("pls: score Gram matrix is singular; reduce components "
                                         "below ") +
                             std::to_string(model.num_components));
  }
  model.P = lu.solve(model.T.transpose() * Xc).transpose();
  model.Q = lu.solve(model.T.transpose() * Yc).transpose();
}

void check_fit_inputs(const Matrix& X, const Matrix& Y, int components) {
  if (X.rows() != Y.rows()) throw std::invalid_argument("pls: X and Y row counts differ");
  if (X.rows() < 1) throw std::invalid_argument("pls: empty data");
  if (components < 0) throw std::invalid_argument("pls: negative component count");
}

}  // namespace

PlsModel nipals_fit(const Matrix& X, const Matrix& Y, int components) {
  check_fit_inputs(X, Y, components);
  auto [Xc, xmean] = mean_center(X);
  auto [Yc, ymean] = mean_center(Y);
  if (components > 0 && Xc.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("nipals: X has zero variance");
  }

  Matrix Xd = Xc, Yd = Yc;
  double cross_scale = (Xc.transpose() * Yc).norm();
  std::vector<Vector> ws, ts, ps, qs, cs;
  for (int comp = 0; comp < components; ++comp) {
    if ((Xd.transpose() * Yd).norm() <= 1e-12 * std::max(cross_scale, 1e-300)) break;
    Vector w = dominant_weight(Xd, Yd);
    if (w.isZero(0.0)) break;
    Vector t = Xd * w;
    double tt = t.squaredNorm();
    if (tt <= 1e-300) break;
    Vector p = Xd.transpose() * t / tt;
    Vector q = Yd.transpose() * t / tt;
    Vector c = Yd.transpose() * t;
    double cn = c.norm();
    if (cn > 0) c /= cn;
    Xd -= t * p.transpose();
    Yd -= t * q.transpose();
    ws.push_back(w);
    ts.push_back(t);
    ps.push_back(p);
    qs.push_back(q);
    cs.push_back(c);
  }

  PlsModel model;
  model.method = PlsMethod::kNipals;
  model.num_components = static_cast<int>(ws.size());
  model.centering = {xmean, ymean};
  model.C = take_columns(cs, Y.cols());
  Matrix W_raw = take_columns(ws, X.cols());
  Matrix P_raw = take_columns(ps, X.cols());
  if (model.num_components > 0) {
    // Deflation scores satisfy T = Xc W (P'W)^{-1}; store the effective
    // weights so T = Xc W holds for the saved model.
    Matrix pw = P_raw.transpose() * W_raw;
    model.W = W_raw * pw.partialPivLu().inverse();
  } else {
    model.W = W_raw;
  }
  finalize_loadings(model, Xc, Yc);
  return model;
}

PlsModel simpls_fit(const Matrix& X, const Matrix& Y, int components) {
  check_fit_inputs(X, Y, components);
  auto [Xc, xmean] = mean_center(X);
  auto [Yc, ymean] = mean_center(Y);
  if (components > 0 && Xc.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("simpls: X has zero variance");
  }

  Matrix S = Xc.transpose() * Yc;  // d x q cross product
  double s_scale = S.norm();
  Matrix basis(X.cols(), 0);  // orthonormalized loading directions
  std::vector<Vector> ws, cs;
  double objective = 0.0;
  for (int comp = 0; comp < components; ++comp) {
    if (S.norm() <= 1e-12 * std::max(s_scale, 1e-300)) break;
    Vector c = dominant_eigvec(S.transpose() * S);
    if (c.isZero(0.0)) break;
    Vector sw = S * c;
    double sigma = sw.norm();
    if (sigma <= 1e-12 * std::max(s_scale, 1e-300)) break;
    Vector w = sw / sigma;
    Vector t = Xc * w;
    double tt = t.squaredNorm();
    if (tt <= 1e-300) break;
    Vector p = Xc.transpose() * t / tt;
    Vector v = p;
    for (int pass = 0; pass < 2; ++pass) {
      if (basis.cols() > 0) v -= basis * (basis.transpose() * v);
    }
    double vn = v.norm();
    if (vn <= 1e-12 * p.norm()) break;  // loading already spanned: rank exhausted
    v /= vn;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = v;
    S -= v * (v.transpose() * S);
    objective += sigma;
    ws.push_back(w);
    cs.push_back(c);
  }

  PlsModel model;
  model.method = PlsMethod::kSimpls;
  model.num_components = static_cast<int>(ws.size());
  model.centering = {xmean, ymean};
  model.W = take_columns(ws, X.cols());
  model.C = take_columns(cs, Y.cols());
  model.solver_info["objective"] = objective;
  finalize_loadings(model, Xc, Yc);
  return model;
}

PlsModel daplsr_fit(const Matrix& X, const Matrix& Y, const DaplsrOptions& options,
                    DaplsrDiagnostics* diagnostics) {
  check_fit_inputs(X, Y, options.components);
  const int c = options.components;
  if (c < 1) throw std::invalid_argument("daplsr: components must be >= 1");
  if (c > std::min(X.cols(), X.rows())) {
    throw std::invalid_argument("daplsr: components exceed min(features, samples)");
  }
  if (options.outer_iters < 1 || !(options.outer_tol > 0)) {
    throw std::invalid_argument("daplsr: outer budget and tolerance must be positive");
  }

  auto [Xc, xmean] = mean_center(X);
  auto [Yc, ymean] = mean_center(Y);
  GeneralizedStiefel gs = GeneralizedStiefel::from_data(Xc, c);
  Oblique ob(static_cast<int>(Y.cols()), c);
  const Matrix S = Xc.transpose() * Yc;

  DaplsrDiagnostics local;
  DaplsrDiagnostics& diag = diagnostics ? *diagnostics : local;
  diag = DaplsrDiagnostics{};
  diag.ridge = GeneralizedStiefel::data_ridge(Xc);

  // Warm start from SIMPLS unless a random start is requested or SIMPLS
  // cannot supply c directions.
  Matrix W, C;
  bool warm = false;
  if (!options.random_init) {
    try {
      PlsModel sim = simpls_fit(X, Y, c);
      if (sim.num_components == c) {
        W = gs.orthonormalize(sim.W);
        C = sim.C;
        for (int j = 0; j < C.cols(); ++j) {
          double nrm = C.col(j).norm();
          if (nrm <= 1e-14) throw std::runtime_error("degenerate C column");
          C.col(j) /= nrm;
        }
        warm = true;
      }
    } catch (const std::exception&) {
      warm = false;
    }
  }
  if (!warm) {
    W = gs.random_point(derive_seed(options.seed, "daplsr-W"));
    C = ob.random_point(derive_seed(options.seed, "daplsr-C"));
  }

  auto objective = [&S](const Matrix& W_, const Matrix& C_) {
    return (W_.transpose() * S * C_).trace();
  };

  double f_prev = objective(W, C);
  for (int round = 0; round < options.outer_iters; ++round) {
    AscentProblem w_problem{
        [&](const Matrix& W_) { return objective(W_, C); },
        [&](const Matrix&) -> Matrix { return S * C; },
    };
    SolveResult w_res = maximize(w_problem, gs, W, options.w_solver);
    W = w_res.x;
    diag.inner_traces.push_back(std::move(w_res.trace));

    AscentProblem c_problem{
        [&](const Matrix& C_) { return objective(W, C_); },
        [&](const Matrix&) -> Matrix { return S.transpose() * W; },
    };
    SolveResult c_res = maximize(c_problem, ob, C, options.c_solver);
    C = c_res.x;
    diag.inner_traces.push_back(std::move(c_res.trace));

    double f_now = objective(W, C);
    diag.outer_objectives.push_back(f_now);
    diag.outer_rounds = round + 1;
    if (std::abs(f_now - f_prev) <= options.outer_tol * std::max(1.0, std::abs(f_prev))) {
      f_prev = f_now;
      break;
    }
    f_prev = f_now;
  }
  diag.final_objective = f_prev;

  PlsModel model;
  model.method = PlsMethod::kDaplsr;
  model.num_components = c;
  model.centering = {xmean, ymean};
  model.W = W;
  model.C = C;
  model.solver_info["objective"] = diag.final_objective;
  model.solver_info["outer_rounds"] = diag.outer_rounds;
  model.solver_info["ridge"] = diag.ridge;
  finalize_loadings(model, Xc, Yc);
  return model;
}

Matrix predict(const PlsModel& model, const Matrix& X_test) {
  if (X_test.cols() != model.centering.feature_means.size()) {
    throw std::invalid_argument("predict: column count does not match the fitted model");
  }
  Matrix centered = X_test.rowwise() - model.centering.feature_means.transpose();
  Matrix yhat = centered * model.W * model.Q.transpose();
  yhat.rowwise() += model.centering.label_means.transpose();
  return yhat;
}

Matrix y_scores(const PlsModel& model, const Matrix& Y) {
  if (Y.cols() != model.centering.label_means.size()) {
    throw std::invalid_argument("y_scores: column count does not match the fitted model");
  }
  return (Y.rowwise() - model.centering.label_means.transpose()) * model.C;
}

std::vector<int> classify(const PlsModel& model, const Matrix& X_test) {
  Matrix yhat = predict(model, X_test);
  std::vector<int> out(yhat.rows());
  for (Eigen::Index i = 0; i < yhat.rows(); ++i) {
    int best = 0;
    for (Eigen::Index j = 1; j < yhat.cols(); ++j) {
      if (yhat(i, j) > yhat(i, best)) best = static_cast<int>(j);
    }
    out[i] = best;
  }
  return out;
}

namespace {

json matrix_to_json(const Matrix& m) {
  json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["data"] = std::vector<double>(m.data(), m.data() + m.size());
  return out;
}

Matrix matrix_from_json(const json& j) {
  Matrix m(j.at("rows").get<Eigen::Index>(), j.at("cols").get<Eigen::Index>());
  auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != m.size()) {
    throw std::runtime_error("model file: matrix payload size mismatch");
  }
  std::copy(data.begin(), data.end(), m.data());
  return m;
}

}  // namespace

void save_model(const PlsModel& model, const std::string& path) {
  json j;
  j["format"] = "pls-model";
  j["version"] = 1;
  j["method"] = to_string(model.method);
  j["components"] = model.num_components;
  j["w"] = matrix_to_json(model.W);
  j["c"] = matrix_to_json(model.C);
  j["t"] = matrix_to_json(model.T);
  j["p"] = matrix_to_json(model.P);
  j["q"] = matrix_to_json(model.Q);
  j["feature_means"] = std::vector<double>(model.centering.feature_means.data(),
                                           model.centering.feature_means.data() +
                                               model.centering.feature_means.size());
  j["label_means"] = std::vector<double>(model.centering.label_means.data(),
                                         model.centering.label_means.data() +
                                             model.centering.label_means.size());
  j["solver_info"] = model.solver_info;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("model file: cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

PlsModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("model file: cannot open '" + path + "'");
  json j = json::parse(in);
  if (j.at("format") != "pls-model" || j.at("version") != 1) {
    throw std::runtime_error("model file: unrecognized container format");
  }
  PlsModel model;
  model.method = pls_method_from_string(j.at("method").get<std::string>());
  model.num_components = j.at("components").get<int>();
  model.W = matrix_from_json(j.at("w"));
  model.C = matrix_from_json(j.at("c"));
  model.T = matrix_from_json(j.at("t"));
  model.P = matrix_from_json(j.at("p"));
  model.Q = matrix_from_json(j.at("q"));
  auto fm = j.at("feature_means").get<std::vector<double>>();
  auto lm = j.at("label_means").get<std::vector<double>>();
  model.centering.feature_means = Eigen::Map<Vector>(fm.data(), static_cast<Eigen::Index>(fm.size()));
  model.centering.label_means = Eigen::Map<Vector>(lm.data(), static_cast<Eigen::Index>(lm.size()));
  model.solver_info = j.at("solver_info").get<std::map<std::string, double>>();
  return model;
}

}  // namespace daplsr
